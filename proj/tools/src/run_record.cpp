#include "hibound_tools/run_record.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <sstream>

#include "hibound/error.hpp"

namespace hibound::tools {

std::string format_number(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", value);
  return buf;
}

std::string dims_string(const Dims& dims) {
  std::string s = std::to_string(dims[0]) + "x" + std::to_string(dims[1]);
  if (dims.rank == 3) s += "x" + std::to_string(dims[2]);
  return s;
}

std::string to_string(Precision precision) { return precision == Precision::f32 ? "f32" : "f64"; }
std::string to_string(BoundMode mode) { return mode == BoundMode::absolute ? "abs" : "rel"; }

std::string csv_header() {
  return "record_version,dataset,dims,precision,eb_mode,eb_value,eb_abs,mode,original_bytes,"
         "compressed_bytes,cr,bitrate,psnr,max_abs_error,mse,compress_s,decompress_s,header_bytes,"
         "anchor_bytes,outlier_bytes,stream_bytes,huffman_table_bytes,outlier_count,raw_codes,verbatim";
}

std::string to_csv(const RunRecord& r) {
  std::ostringstream os;
  os << kRecordVersion << ',' << r.dataset << ',' << dims_string(r.dims) << ',' << to_string(r.precision) << ','
     << to_string(r.bound.mode) << ',' << format_number(r.bound.magnitude) << ',' << format_number(r.error_bound)
     << ',' << to_string(r.mode) << ',' << r.original_bytes << ',' << r.compressed_bytes << ','
     << format_number(r.compression_ratio) << ',' << format_number(r.bitrate) << ',' << format_number(r.psnr)
     << ',' << format_number(r.max_abs_error) << ',' << format_number(r.mse) << ','
     << format_number(r.compress_seconds) << ',' << format_number(r.decompress_seconds) << ',' << r.header_bytes
     << ',' << r.anchor_bytes << ',' << r.outlier_bytes << ',' << r.stream_bytes << ',' << r.huffman_table_bytes
     << ',' << r.outlier_count << ',' << (r.raw_codes ? 1 : 0) << ',' << (r.verbatim ? 1 : 0);
  return os.str();
}

std::string to_json(const RunRecord& r) {
  // JSON has no infinity; non-finite numbers are written as strings.
  auto number = [](double v) -> nlohmann::json {
    if (std::isfinite(v)) return v;
    return format_number(v);
  };
  nlohmann::ordered_json j;
  j["record_version"] = kRecordVersion;
  j["dataset"] = r.dataset;
  j["dims"] = {r.dims[0], r.dims[1]};
  if (r.dims.rank == 3) j["dims"].push_back(r.dims[2]);
  j["precision"] = to_string(r.precision);
  j["eb_mode"] = to_string(r.bound.mode);
  j["eb_value"] = r.bound.magnitude;
  j["eb_abs"] = r.error_bound;
  j["mode"] = to_string(r.mode);
  j["original_bytes"] = r.original_bytes;
  j["compressed_bytes"] = r.compressed_bytes;
  j["cr"] = number(r.compression_ratio);
  j["bitrate"] = number(r.bitrate);
  j["psnr"] = number(r.psnr);
  j["max_abs_error"] = r.max_abs_error;
  j["mse"] = r.mse;
  j["compress_s"] = r.compress_seconds;
  j["decompress_s"] = r.decompress_seconds;
  j["sections"] = {{"header", r.header_bytes},
                   {"anchors", r.anchor_bytes},
                   {"outliers", r.outlier_bytes},
                   {"stream", r.stream_bytes},
                   {"huffman_table", r.huffman_table_bytes}};
  j["outlier_count"] = r.outlier_count;
  j["raw_codes"] = r.raw_codes;
  j["verbatim"] = r.verbatim;
  return j.dump();
}

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

RunRecord analyze_timed(const AnyField& original, std::span<const std::uint8_t> archive, std::string dataset,
                        double* decompress_seconds) {
  const ArchiveInfo info = inspect(archive);
  if (info.precision != precision_of(original)) {
    fail(ErrorCode::dimension_mismatch, "archive precision differs from the original field");
  }
  if (info.dims.extent != dims_of(original).extent) {
    fail(ErrorCode::dimension_mismatch, "archive dims " + dims_string(info.dims) + " differ from original " +
                                            dims_string(dims_of(original)));
  }
  const auto start = std::chrono::steady_clock::now();
  const AnyField decoded = decompress(archive);
  const double elapsed = seconds_since(start);
  if (decompress_seconds) *decompress_seconds = elapsed;

  RunRecord r;
  r.dataset = std::move(dataset);
  r.dims = info.dims;
  r.precision = info.precision;
  r.bound = {BoundMode::absolute, info.error_bound};
  r.error_bound = info.error_bound;
  r.mode = info.mode;
  r.compressed_bytes = archive.size();
  r.decompress_seconds = elapsed;
  std::visit(
      [&](const auto& orig) {
        using T = typename std::decay_t<decltype(orig)>::value_type;
        const auto& recon = std::get<Field<T>>(decoded);
        const QualityReport q = evaluate_quality(orig, recon, archive.size());
        r.original_bytes = orig.byte_size();
        r.compression_ratio = q.compression_ratio;
        r.bitrate = q.bitrate;
        r.psnr = q.psnr;
        r.max_abs_error = q.max_abs_error;
        r.mse = q.mse;
      },
      original);
  r.header_bytes = info.header_bytes;
  r.anchor_bytes = info.anchor_bytes;
  r.outlier_bytes = info.outlier_bytes;
  r.stream_bytes = info.stream_bytes;
  r.huffman_table_bytes = info.huffman_table_bytes;
  r.outlier_count = info.outlier_count;
  r.raw_codes = info.raw_codes;
  r.verbatim = info.verbatim;
  return r;
}

}  // namespace

RunRecord analyze(const AnyField& original, std::span<const std::uint8_t> archive, std::string dataset) {
  return analyze_timed(original, archive, std::move(dataset), nullptr);
}

RunRecord measure(const AnyField& field, const ErrorBoundSpec& bound, const CompressOptions& options,
                  std::string dataset) {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<std::uint8_t> archive = compress(field, bound, options);
  const double compress_seconds = seconds_since(start);
  RunRecord r = analyze_timed(field, archive, std::move(dataset), nullptr);
  r.bound = bound;
  r.compress_seconds = compress_seconds;
  return r;
}

}  // namespace hibound::tools
