#include "hibound/archive.hpp"

#include <bit>
#include <cmath>
#include <cstring>

#include "hibound/autotune.hpp"
#include "hibound/bytes.hpp"
#include "hibound/error.hpp"
#include "hibound/lossless/pipeline.hpp"
#include "hibound/predictor.hpp"
#include "hibound/quantizer.hpp"
#include "hibound/raw_io.hpp"
#include "hibound/reorder.hpp"

namespace hibound {

std::string to_string(LosslessMode mode) { return mode == LosslessMode::cr ? "cr" : "tp"; }

std::optional<LosslessMode> parse_mode(std::string_view text) {
  if (text == "cr" || text == "CR") return LosslessMode::cr;
  if (text == "tp" || text == "TP") return LosslessMode::tp;
  return std::nullopt;
}

namespace {

const lossless::Pipeline& pipeline_for(LosslessMode mode) {
  return mode == LosslessMode::cr ? lossless::ratio_pipeline() : lossless::throughput_pipeline();
}

// Parsed archive with its sections still pointing into the input buffer.
struct ParsedArchive {
  ArchiveInfo info;
  std::span<const std::uint8_t> anchors;
  std::span<const std::uint8_t> outliers;
  std::span<const std::uint8_t> stream;
};

ParsedArchive parse(std::span<const std::uint8_t> bytes) {
  ByteReader in(bytes);
  ParsedArchive p;
  ArchiveInfo& info = p.info;
  const auto magic = in.get_bytes(4, "magic");
  if (std::memcmp(magic.data(), kArchiveMagic.data(), 4) != 0) {
    fail(ErrorCode::corrupt_archive, "bad magic: not a hibound archive");
  }
  info.version = in.get<std::uint8_t>("version");
  if (info.version != kArchiveVersion) {
    fail(ErrorCode::corrupt_archive, "unsupported archive version " + std::to_string(info.version));
  }
  const auto mode = in.get<std::uint8_t>("mode");
  if (mode > 1) fail(ErrorCode::corrupt_archive, "unknown lossless mode");
  info.mode = static_cast<LosslessMode>(mode);
  const auto precision = in.get<std::uint8_t>("precision");
  if (precision > 1) fail(ErrorCode::corrupt_archive, "unknown precision");
  info.precision = static_cast<Precision>(precision);
  const auto ndim = in.get<std::uint8_t>("ndim");
  if (ndim != 2 && ndim != 3) fail(ErrorCode::corrupt_archive, "archive rank must be 2 or 3");
  std::array<std::size_t, 3> extent{};
  for (auto& e : extent) e = static_cast<std::size_t>(in.get<std::uint64_t>("dims"));
  if (ndim == 2 && extent[2] != 1) fail(ErrorCode::corrupt_archive, "rank-2 archive with a third extent");
  try {
    info.dims = Dims::of(std::span<const std::size_t>(extent.data(), ndim));
  } catch (const Error&) {
    fail(ErrorCode::corrupt_archive, "invalid dimensions in archive header");
  }
  info.error_bound = in.get<double>("error bound");
  if (!(info.error_bound > 0.0) || !std::isfinite(info.error_bound)) {
    fail(ErrorCode::corrupt_archive, "invalid error bound in archive header");
  }
  const auto cfg = in.get_bytes(kMaxLevels, "interpolation config");
  info.config = InterpConfig::parse(std::span<const std::uint8_t, kMaxLevels>(cfg.data(), kMaxLevels));
  const auto log2_stride = in.get<std::uint8_t>("anchor stride");
  if (log2_stride > 4) fail(ErrorCode::corrupt_archive, "anchor stride out of range");
  info.anchor_stride = std::size_t{1} << log2_stride;
  const auto flags = in.get<std::uint8_t>("flags");
  if (flags & ~(kFlagRawCodes | kFlagRowMajor | kFlagVerbatim)) {
    fail(ErrorCode::corrupt_archive, "unknown archive flags");
  }
  info.raw_codes = flags & kFlagRawCodes;
  info.row_major = flags & kFlagRowMajor;
  info.verbatim = flags & kFlagVerbatim;
  info.header_bytes = in.position();

  const std::size_t value_size = element_bytes(info.precision);
  const auto ac = anchor_counts(info.dims, info.anchor_stride);
  info.anchor_count = in.get<std::uint64_t>("anchor count");
  if (info.anchor_count != (info.verbatim ? 0 : ac[0] * ac[1] * ac[2])) {
    fail(ErrorCode::corrupt_archive, "anchor count mismatch");
  }
  in.require(static_cast<std::size_t>(info.anchor_count) * value_size, "anchors");
  p.anchors = in.get_bytes(static_cast<std::size_t>(info.anchor_count) * value_size, "anchors");
  info.anchor_bytes = 8 + p.anchors.size();

  info.outlier_count = in.get<std::uint64_t>("outlier count");
  if (info.outlier_count > (info.verbatim ? 0 : info.dims.count())) {
    fail(ErrorCode::corrupt_archive, "outlier count exceeds grid size");
  }
  p.outliers = in.get_bytes(static_cast<std::size_t>(info.outlier_count) * (8 + value_size), "outliers");
  info.outlier_bytes = 8 + p.outliers.size();

  const auto stream_length = in.get<std::uint64_t>("stream length");
  if (stream_length > in.remaining()) fail(ErrorCode::corrupt_archive, "truncated code stream");
  p.stream = in.get_bytes(static_cast<std::size_t>(stream_length), "code stream");
  info.stream_bytes = 8 + p.stream.size();
  if (!in.done()) fail(ErrorCode::corrupt_archive, "trailing bytes after code stream");
  if (info.verbatim && stream_length != info.dims.count() * value_size) {
    fail(ErrorCode::corrupt_archive, "verbatim field length mismatch");
  }
  if (info.raw_codes && !info.verbatim && stream_length != info.dims.count()) {
    fail(ErrorCode::corrupt_archive, "raw code stream length mismatch");
  }
  if (!info.raw_codes && !info.verbatim && info.mode == LosslessMode::cr) info.huffman_table_bytes = 256;
  info.total_bytes = bytes.size();
  return p;
}

template <class T>
T read_value(ByteReader& in, const char* what) {
  return in.get<T>(what);
}

template <class T>
void write_header(ByteWriter& out, const Dims& dims, LosslessMode mode, double eb, const InterpConfig& config,
                  std::size_t stride, std::uint8_t flags) {
  out.put_bytes(std::span(reinterpret_cast<const std::uint8_t*>(kArchiveMagic.data()), 4));
  out.put(kArchiveVersion);
  out.put(static_cast<std::uint8_t>(mode));
  out.put(static_cast<std::uint8_t>(precision_of<T>()));
  out.put(static_cast<std::uint8_t>(dims.rank));
  for (auto e : dims.extent) out.put(static_cast<std::uint64_t>(e));
  out.put(eb);
  out.put_bytes(config.serialize());
  out.put(static_cast<std::uint8_t>(std::countr_zero(stride)));
  out.put(flags);
}

}  // namespace

template <class T>
std::vector<std::uint8_t> compress(const Field<T>& field, const ErrorBoundSpec& bound,
                                   const CompressOptions& options) {
  const double eb = resolve_error_bound(bound, field);
  const Dims& dims = field.dims();
  const std::size_t stride = anchor_stride_for(dims);
  const InterpConfig config = options.config ? *options.config : tune(field, eb);

  Decomposition<T> dec = decompose(field, eb, config, stride);
  const QuantizedField<T>& q = dec.quantized;

  std::vector<std::uint8_t> sequence =
      options.reorder ? reorder(q.codes, LevelMap(dims, stride)) : q.codes;
  std::vector<std::uint8_t> stream = pipeline_for(options.mode).encode(sequence);
  std::uint8_t flags = options.reorder ? 0 : kFlagRowMajor;
  if (stream.size() > sequence.size()) {
    stream = std::move(sequence);
    flags |= kFlagRawCodes;
  }

  const std::size_t encoded_size = kArchiveHeaderSize + 24 + q.anchors.values.size() * sizeof(T) +
                                   q.outliers.size() * (8 + sizeof(T)) + stream.size();
  if (encoded_size > kArchiveHeaderSize + 24 + field.byte_size()) {
    ByteWriter out(kArchiveHeaderSize + 24 + field.byte_size());
    write_header<T>(out, dims, options.mode, eb, config, stride, flags | kFlagRawCodes | kFlagVerbatim);
    out.put(std::uint64_t{0});
    out.put(std::uint64_t{0});
    out.put(static_cast<std::uint64_t>(field.byte_size()));
    for (T v : field.values()) out.put(v);
    return std::move(out).take();
  }

  ByteWriter out(encoded_size);
  write_header<T>(out, dims, options.mode, eb, config, stride, flags);
  out.put(static_cast<std::uint64_t>(q.anchors.values.size()));
  for (T v : q.anchors.values) out.put(v);
  out.put(static_cast<std::uint64_t>(q.outliers.size()));
  for (const auto& o : q.outliers) {
    out.put(o.index);
    out.put(o.value);
  }
  out.put(static_cast<std::uint64_t>(stream.size()));
  out.put_bytes(stream);
  return std::move(out).take();
}

template std::vector<std::uint8_t> compress<float>(const Field<float>&, const ErrorBoundSpec&,
                                                   const CompressOptions&);
template std::vector<std::uint8_t> compress<double>(const Field<double>&, const ErrorBoundSpec&,
                                                    const CompressOptions&);

std::vector<std::uint8_t> compress(const AnyField& field, const ErrorBoundSpec& bound,
                                   const CompressOptions& options) {
  return std::visit([&](const auto& f) { return compress(f, bound, options); }, field);
}

template <class T>
Field<T> decompress_as(std::span<const std::uint8_t> archive) {
  const ParsedArchive p = parse(archive);
  const ArchiveInfo& info = p.info;
  if (info.precision != precision_of<T>()) fail(ErrorCode::invalid_argument, "archive precision mismatch");
  if (info.verbatim) {
    try {
      return field_from_bytes<T>(p.stream, info.dims);
    } catch (const Error& e) {
      fail(ErrorCode::corrupt_archive, e.what());
    }
  }

  QuantizedField<T> q;
  q.dims = info.dims;
  q.anchors.stride = info.anchor_stride;
  q.anchors.counts = anchor_counts(info.dims, info.anchor_stride);
  {
    ByteReader in(p.anchors);
    q.anchors.values.reserve(static_cast<std::size_t>(info.anchor_count));
    for (std::uint64_t i = 0; i < info.anchor_count; ++i) q.anchors.values.push_back(read_value<T>(in, "anchor"));
  }
  {
    ByteReader in(p.outliers);
    q.outliers.reserve(static_cast<std::size_t>(info.outlier_count));
    for (std::uint64_t i = 0; i < info.outlier_count; ++i) {
      Outlier<T> o;
      o.index = in.get<std::uint64_t>("outlier index");
      o.value = read_value<T>(in, "outlier value");
      if (!std::isfinite(o.value)) fail(ErrorCode::corrupt_archive, "non-finite outlier value");
      q.outliers.push_back(o);
    }
  }
  for (T v : q.anchors.values) {
    if (!std::isfinite(v)) fail(ErrorCode::corrupt_archive, "non-finite anchor value");
  }

  std::vector<std::uint8_t> sequence = info.raw_codes
                                           ? std::vector<std::uint8_t>(p.stream.begin(), p.stream.end())
                                           : pipeline_for(info.mode).decode(p.stream);
  if (sequence.size() != info.dims.count()) fail(ErrorCode::corrupt_archive, "decoded code count mismatch");
  q.codes = info.row_major ? std::move(sequence)
                           : inverse_reorder(sequence, LevelMap(info.dims, info.anchor_stride));
  try {
    return reconstruct(q, info.error_bound, info.config);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::invalid_data) fail(ErrorCode::corrupt_archive, e.what());
    throw;
  }
}

template Field<float> decompress_as<float>(std::span<const std::uint8_t>);
template Field<double> decompress_as<double>(std::span<const std::uint8_t>);

AnyField decompress(std::span<const std::uint8_t> archive) {
  const ArchiveInfo info = parse(archive).info;
  if (info.precision == Precision::f32) return decompress_as<float>(archive);
  return decompress_as<double>(archive);
}

ArchiveInfo inspect(std::span<const std::uint8_t> archive) { return parse(archive).info; }

}  // namespace hibound
