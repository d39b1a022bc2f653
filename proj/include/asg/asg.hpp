#ifndef ASG_ASG_HPP
#define ASG_ASG_HPP

#include "asg/core.hpp"
#include "asg/gpa.hpp"
#include "asg/kshot.hpp"
#include "asg/pipeline.hpp"
#include "asg/seeding.hpp"
#include "asg/sgc.hpp"
#include "asg/tensor_io.hpp"
#include "asg/types.hpp"

#endif  // ASG_ASG_HPP
