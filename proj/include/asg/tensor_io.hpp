#ifndef ASG_TENSOR_IO_HPP
#define ASG_TENSOR_IO_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "asg/types.hpp"

namespace asg {

// Tensor container layout: "ASGT" magic, u8 version, u8 dtype, u8 ndim,
// ndim little-endian u32 dims, then the row-major little-endian payload.
inline constexpr std::uint8_t kTensorVersion = 1;
inline constexpr Index kMaxTensorElements = Index(1) << 31;

enum class TensorDtype : std::uint8_t {
  f32 = 1,
  boolean = 2,
};

struct TensorData {
  TensorDtype dtype = TensorDtype::f32;
  std::vector<std::uint32_t> dims;
  std::vector<float> f32;        // payload when dtype == f32
  std::vector<std::uint8_t> u8;  // payload when dtype == boolean

  std::size_t element_count() const {
    std::size_t n = 1;
    for (auto d : dims) n *= d;
    return dims.empty() ? 0 : n;
  }
};

namespace detail {

inline void put_u32le(std::vector<unsigned char>& out, std::uint32_t v) {
  out.push_back(static_cast<unsigned char>(v & 0xff));
  out.push_back(static_cast<unsigned char>((v >> 8) & 0xff));
  out.push_back(static_cast<unsigned char>((v >> 16) & 0xff));
  out.push_back(static_cast<unsigned char>((v >> 24) & 0xff));
}

inline std::uint32_t get_u32le(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

inline std::vector<unsigned char> read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::io_failure, "cannot open " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (in.bad()) fail(errc::io_failure, "read failed on " + path.string());
  return bytes;
}

inline void write_bytes(const std::filesystem::path& path,
                        const std::vector<unsigned char>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(errc::io_failure, "cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out.good()) fail(errc::io_failure, "write failed on " + path.string());
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(errc::io_failure, "cannot open " + path.string() + " for writing");
  out << text;
  if (!out.good()) fail(errc::io_failure, "write failed on " + path.string());
}

}  // namespace detail

inline std::size_t dtype_size(TensorDtype dtype) {
  return dtype == TensorDtype::f32 ? 4 : 1;
}

inline TensorData read_tensor(const std::filesystem::path& path) {
  const std::vector<unsigned char> bytes = detail::read_bytes(path);
  if (bytes.size() < 4) fail(errc::truncated_payload, path.string() + ": truncated header");
  if (!(bytes[0] == 'A' && bytes[1] == 'S' && bytes[2] == 'G' && bytes[3] == 'T'))
    fail(errc::bad_magic, path.string() + ": not a tensor file");
  if (bytes.size() < 7) fail(errc::truncated_payload, path.string() + ": truncated header");
  if (bytes[4] != kTensorVersion)
    fail(errc::unsupported_version,
         path.string() + ": unsupported version " + std::to_string(bytes[4]));

  TensorData tensor;
  const std::uint8_t dtype = bytes[5];
  if (dtype != static_cast<std::uint8_t>(TensorDtype::f32) &&
      dtype != static_cast<std::uint8_t>(TensorDtype::boolean))
    fail(errc::unsupported_version,
         path.string() + ": unsupported dtype code " + std::to_string(dtype));
  tensor.dtype = static_cast<TensorDtype>(dtype);

  const std::uint8_t ndim = bytes[6];
  if (ndim != 2 && ndim != 3)
    fail(errc::shape_overflow, path.string() + ": unsupported rank " + std::to_string(ndim));
  if (bytes.size() < 7 + std::size_t(4) * ndim)
    fail(errc::truncated_payload, path.string() + ": truncated dimension list");

  std::size_t elements = 1;
  for (std::uint8_t d = 0; d < ndim; ++d) {
    const std::uint32_t dim = detail::get_u32le(bytes.data() + 7 + std::size_t(4) * d);
    if (dim == 0) fail(errc::shape_overflow, path.string() + ": zero dimension");
    if (elements > static_cast<std::size_t>(kMaxTensorElements) / dim)
      fail(errc::shape_overflow, path.string() + ": element count overflows");
    elements *= dim;
    tensor.dims.push_back(dim);
  }

  const std::size_t header = 7 + std::size_t(4) * ndim;
  const std::size_t expected = elements * dtype_size(tensor.dtype);
  if (bytes.size() - header != expected)
    fail(errc::truncated_payload,
         path.string() + ": payload holds " + std::to_string(bytes.size() - header) +
             " bytes, expected " + std::to_string(expected));

  const unsigned char* p = bytes.data() + header;
  if (tensor.dtype == TensorDtype::f32) {
    tensor.f32.resize(elements);
    for (std::size_t i = 0; i < elements; ++i)
      tensor.f32[i] = std::bit_cast<float>(detail::get_u32le(p + 4 * i));
  } else {
    tensor.u8.assign(p, p + elements);
  }
  return tensor;
}

inline void write_tensor(const std::filesystem::path& path, const TensorData& tensor) {
  if (tensor.dims.size() != 2 && tensor.dims.size() != 3)
    fail(errc::shape_overflow, "write_tensor: rank must be 2 or 3");
  std::size_t elements = 1;
  for (auto d : tensor.dims) {
    if (d == 0) fail(errc::shape_overflow, "write_tensor: zero dimension");
    elements *= d;
  }
  const std::size_t have =
      tensor.dtype == TensorDtype::f32 ? tensor.f32.size() : tensor.u8.size();
  if (have != elements)
    fail(errc::invalid_value, "write_tensor: payload does not match dims");

  std::vector<unsigned char> bytes;
  bytes.reserve(7 + 4 * tensor.dims.size() + elements * dtype_size(tensor.dtype));
  bytes.insert(bytes.end(), {'A', 'S', 'G', 'T'});
  bytes.push_back(kTensorVersion);
  bytes.push_back(static_cast<unsigned char>(tensor.dtype));
  bytes.push_back(static_cast<unsigned char>(tensor.dims.size()));
  for (auto d : tensor.dims) detail::put_u32le(bytes, d);
  if (tensor.dtype == TensorDtype::f32) {
    for (float v : tensor.f32) detail::put_u32le(bytes, std::bit_cast<std::uint32_t>(v));
  } else {
    bytes.insert(bytes.end(), tensor.u8.begin(), tensor.u8.end());
  }
  detail::write_bytes(path, bytes);
}

/// 3-dim f32 tensor (channels, height, width) -> feature map.
template <class Scalar>
FeatureMap<Scalar> to_feature_map(const TensorData& tensor) {
  if (tensor.dtype != TensorDtype::f32 || tensor.dims.size() != 3)
    fail(errc::invalid_value, "to_feature_map: expected a 3-dim f32 tensor");
  const Index c = static_cast<Index>(tensor.dims[0]);
  const Index h = static_cast<Index>(tensor.dims[1]);
  const Index w = static_cast<Index>(tensor.dims[2]);
  MatrixX<Scalar> values(h * w, c);
  for (Index ch = 0; ch < c; ++ch)
    for (Index p = 0; p < h * w; ++p)
      values(p, ch) = static_cast<Scalar>(tensor.f32[static_cast<std::size_t>(ch * h * w + p)]);
  return FeatureMap<Scalar>(c, h, w, std::move(values));
}

/// 2-dim boolean tensor (height, width) -> mask; nonzero bytes are foreground.
inline BinaryMask to_mask(const TensorData& tensor) {
  if (tensor.dtype != TensorDtype::boolean || tensor.dims.size() != 2)
    fail(errc::invalid_value, "to_mask: expected a 2-dim boolean tensor");
  const Index h = static_cast<Index>(tensor.dims[0]);
  const Index w = static_cast<Index>(tensor.dims[1]);
  BinaryMask mask(h, w);
  for (Index r = 0; r < h; ++r)
    for (Index c = 0; c < w; ++c)
      mask.bits(r, c) = tensor.u8[static_cast<std::size_t>(r * w + c)] != 0;
  return mask;
}

template <class Scalar>
TensorData from_feature_map(const FeatureMap<Scalar>& feat) {
  TensorData tensor;
  tensor.dtype = TensorDtype::f32;
  tensor.dims = {static_cast<std::uint32_t>(feat.channels),
                 static_cast<std::uint32_t>(feat.height),
                 static_cast<std::uint32_t>(feat.width)};
  tensor.f32.resize(static_cast<std::size_t>(feat.channels * feat.pixel_count()));
  for (Index ch = 0; ch < feat.channels; ++ch)
    for (Index p = 0; p < feat.pixel_count(); ++p)
      tensor.f32[static_cast<std::size_t>(ch * feat.pixel_count() + p)] =
          static_cast<float>(feat.values(p, ch));
  return tensor;
}

inline TensorData from_mask(const BinaryMask& mask) {
  TensorData tensor;
  tensor.dtype = TensorDtype::boolean;
  tensor.dims = {static_cast<std::uint32_t>(mask.height()),
                 static_cast<std::uint32_t>(mask.width())};
  tensor.u8.resize(static_cast<std::size_t>(mask.size()));
  for (Index r = 0; r < mask.height(); ++r)
    for (Index c = 0; c < mask.width(); ++c)
      tensor.u8[static_cast<std::size_t>(r * mask.width() + c)] =
          mask.bits(r, c) ? 1 : 0;
  return tensor;
}

/// 2-dim f32 tensor from a row-major pixel plane.
template <class Scalar>
TensorData from_plane(Index height, Index width, const VectorX<Scalar>& values) {
  TensorData tensor;
  tensor.dtype = TensorDtype::f32;
  tensor.dims = {static_cast<std::uint32_t>(height), static_cast<std::uint32_t>(width)};
  tensor.f32.resize(static_cast<std::size_t>(values.size()));
  for (Index i = 0; i < values.size(); ++i)
    tensor.f32[static_cast<std::size_t>(i)] = static_cast<float>(values(i));
  return tensor;
}

/// 2-dim f32 tensor from a matrix, row-major.
template <class Scalar>
TensorData from_matrix(const MatrixX<Scalar>& m) {
  TensorData tensor;
  tensor.dtype = TensorDtype::f32;
  tensor.dims = {static_cast<std::uint32_t>(m.rows()), static_cast<std::uint32_t>(m.cols())};
  tensor.f32.reserve(static_cast<std::size_t>(m.size()));
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c)
      tensor.f32.push_back(static_cast<float>(m(r, c)));
  return tensor;
}

template <class Scalar>
MatrixX<Scalar> to_matrix(const TensorData& tensor) {
  if (tensor.dtype != TensorDtype::f32 || tensor.dims.size() != 2)
    fail(errc::invalid_value, "to_matrix: expected a 2-dim f32 tensor");
  const Index rows = static_cast<Index>(tensor.dims[0]);
  const Index cols = static_cast<Index>(tensor.dims[1]);
  MatrixX<Scalar> m(rows, cols);
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c)
      m(r, c) = static_cast<Scalar>(tensor.f32[static_cast<std::size_t>(r * cols + c)]);
  return m;
}

/// 16-bit binary PGM of prototype indices (big-endian samples per Netpbm).
inline void write_pgm16(const std::filesystem::path& path, const GuideMap& guide) {
  std::vector<unsigned char> bytes;
  const std::string header =
      "P5\n" + std::to_string(guide.width) + " " + std::to_string(guide.height) +
      "\n65535\n";
  bytes.insert(bytes.end(), header.begin(), header.end());
  for (Index p = 0; p < guide.indices.size(); ++p) {
    const int v = guide.indices(p);
    if (v < 0 || v > 65535)
      fail(errc::invalid_value, "write_pgm16: index out of 16-bit range");
    bytes.push_back(static_cast<unsigned char>((v >> 8) & 0xff));
    bytes.push_back(static_cast<unsigned char>(v & 0xff));
  }
  detail::write_bytes(path, bytes);
}

/// 8-bit binary PGM; values are mapped linearly from [lo, hi] to [0, 255]
/// and clamped. Visualization only; exact values belong in tensor files.
template <class Scalar>
void write_pgm8(const std::filesystem::path& path, Index height, Index width,
                const VectorX<Scalar>& values, double lo = -1.0, double hi = 1.0) {
  std::vector<unsigned char> bytes;
  const std::string header =
      "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
  bytes.insert(bytes.end(), header.begin(), header.end());
  for (Index p = 0; p < values.size(); ++p) {
    double t = (static_cast<double>(values(p)) - lo) / (hi - lo);
    t = std::clamp(t, 0.0, 1.0);
    bytes.push_back(static_cast<unsigned char>(std::lround(t * 255.0)));
  }
  detail::write_bytes(path, bytes);
}

/// Comma-separated grid, one text row per pixel row.
template <class Scalar>
void write_csv(const std::filesystem::path& path, Index height, Index width,
               const VectorX<Scalar>& values) {
  std::ostringstream out;
  out << std::setprecision(std::numeric_limits<Scalar>::max_digits10);
  for (Index r = 0; r < height; ++r) {
    for (Index c = 0; c < width; ++c) {
      if (c) out << ',';
      out << values(r * width + c);
    }
    out << '\n';
  }
  detail::write_text(path, out.str());
}

}  // namespace asg

#endif  // ASG_TENSOR_IO_HPP
