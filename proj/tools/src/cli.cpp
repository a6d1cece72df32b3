#include "hibound_tools/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>

#include "hibound/archive.hpp"
#include "hibound/autotune.hpp"
#include "hibound/raw_io.hpp"
#include "hibound_tools/fixtures.hpp"
#include "hibound_tools/run_record.hpp"
#include "hibound_tools/sweep.hpp"

namespace hibound::tools {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return kExitUsage;
    case ErrorCode::degenerate_bound: return kExitDegenerateBound;
    case ErrorCode::dimension_mismatch:
    case ErrorCode::invalid_data: return kExitBadInput;
    case ErrorCode::corrupt_archive: return kExitCorrupt;
    case ErrorCode::io: return kExitIo;
  }
  return kExitFailure;
}

namespace {

struct DatasetPreset {
  const char* name;
  std::array<std::size_t, 3> dims;
  Precision precision;
};

// SDRBench layouts; dims slowest-first.
constexpr DatasetPreset kPresets[] = {
    {"nyx-temperature", {512, 512, 512}, Precision::f32},
};

// Options shared by every command that reads a raw field.
struct FieldInput {
  std::string path;
  std::string type = "f32";
  std::vector<std::size_t> dims;
  std::vector<std::string> dataset;

  void add_to(CLI::App* cmd, bool required_path) {
    auto* in = cmd->add_option("-i,--input", path, "raw little-endian array (or use --dataset)");
    if (required_path) in->required();
    cmd->add_option("-t,--type", type, "element type")->check(CLI::IsMember({"f32", "f64"}));
    cmd->add_option("-d,--dims", dims, "extents slowest-first, e.g. -d 512 512 512 (x y z, z contiguous)")
        ->expected(2, 3);
    cmd->add_option("--dataset", dataset, "named dataset preset and its file: --dataset nyx-temperature <path>")
        ->expected(2);
  }

  std::string label() const {
    if (!dataset.empty()) return dataset[0];
    return std::filesystem::path(path).stem().string();
  }

  AnyField load() {
    if (!dataset.empty()) {
      const auto it = std::find_if(std::begin(kPresets), std::end(kPresets),
                                   [&](const DatasetPreset& p) { return dataset[0] == p.name; });
      if (it == std::end(kPresets)) fail(ErrorCode::invalid_argument, "unknown dataset preset '" + dataset[0] + "'");
      if (!path.empty() && path != dataset[1]) {
        fail(ErrorCode::invalid_argument, "--dataset and -i name different files");
      }
      return read_raw(dataset[1], Dims::of(it->dims), it->precision);
    }
    if (path.empty()) fail(ErrorCode::invalid_argument, "an input file is required (-i or --dataset)");
    if (dims.empty()) fail(ErrorCode::invalid_argument, "raw input needs its extents: -d X Y [Z]");
    return read_raw(path, Dims::of(dims), type == "f64" ? Precision::f64 : Precision::f32);
  }
};

struct BoundInput {
  std::string mode = "abs";
  double value = 0.0;

  void add_to(CLI::App* cmd) {
    cmd->add_option("-m,--bound-mode", mode, "error bound mode")->check(CLI::IsMember({"abs", "rel"}));
    cmd->add_option("-e,--error-bound", value, "error bound (absolute, or fraction of value range)")->required();
  }

  ErrorBoundSpec resolve() const { return {mode == "rel" ? BoundMode::relative : BoundMode::absolute, value}; }
};

void write_text(const std::string& path, const std::string& text) {
  write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

std::string describe(const ArchiveInfo& info) {
  nlohmann::ordered_json j;
  j["version"] = info.version;
  j["mode"] = to_string(info.mode);
  j["precision"] = to_string(info.precision);
  j["dims"] = dims_string(info.dims);
  j["eb_abs"] = info.error_bound;
  std::vector<std::string> levels;
  for (int l = kMaxLevels; l >= 1; --l) levels.push_back(to_string(info.config.at(l)));
  j["config_level4_to_1"] = levels;
  j["anchor_stride"] = info.anchor_stride;
  j["raw_codes"] = info.raw_codes;
  j["level_reordered"] = !info.row_major;
  j["verbatim"] = info.verbatim;
  j["anchor_count"] = info.anchor_count;
  j["outlier_count"] = info.outlier_count;
  j["sections"] = {{"header", info.header_bytes},
                   {"anchors", info.anchor_bytes},
                   {"outliers", info.outlier_bytes},
                   {"stream", info.stream_bytes},
                   {"huffman_table", info.huffman_table_bytes}};
  j["total_bytes"] = info.total_bytes;
  return j.dump(2);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"hibound: error-bounded lossy compressor for floating-point grids"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "hibound 0.1.0");

  // compress
  FieldInput c_in;
  BoundInput c_bound;
  std::string c_out, c_mode = "cr", c_record;
  bool c_no_reorder = false;
  auto* compress_cmd = app.add_subcommand("compress", "compress a raw field into an archive");
  c_in.add_to(compress_cmd, false);
  c_bound.add_to(compress_cmd);
  compress_cmd->add_option("--mode", c_mode, "lossless pipeline: cr (ratio) or tp (throughput)")
      ->check(CLI::IsMember({"cr", "tp"}));
  compress_cmd->add_option("-o,--output", c_out, "archive path")->required();
  compress_cmd->add_flag("--no-reorder", c_no_reorder, "keep codes in row-major order");
  compress_cmd->add_option("--record", c_record, "also print a run record")->check(CLI::IsMember({"csv", "json"}));

  // decompress
  std::string d_in, d_out;
  auto* decompress_cmd = app.add_subcommand("decompress", "decode an archive to a raw field");
  decompress_cmd->add_option("-i,--input", d_in, "archive path")->required();
  decompress_cmd->add_option("-o,--output", d_out, "raw output path")->required();

  // analyze
  FieldInput a_in;
  std::string a_archive, a_format = "csv";
  bool a_no_header = false;
  auto* analyze_cmd = app.add_subcommand("analyze", "report metrics of an archive against its original");
  a_in.add_to(analyze_cmd, false);
  analyze_cmd->add_option("-z,--archive", a_archive, "archive path")->required();
  analyze_cmd->add_option("--format", a_format, "record format")->check(CLI::IsMember({"csv", "json"}));
  analyze_cmd->add_flag("--no-header", a_no_header, "omit the CSV header line");

  // sweep
  FieldInput s_in;
  std::string s_bound_mode = "rel", s_csv, s_svg;
  std::vector<double> s_bounds;
  std::vector<std::string> s_modes{"cr", "tp"};
  bool s_no_reorder = false;
  auto* sweep_cmd = app.add_subcommand("sweep", "rate-distortion sweep over error bounds and modes");
  s_in.add_to(sweep_cmd, false);
  sweep_cmd->add_option("-m,--bound-mode", s_bound_mode, "error bound mode")->check(CLI::IsMember({"abs", "rel"}));
  sweep_cmd->add_option("-e,--error-bounds", s_bounds, "error bounds to visit")->required()->expected(1, -1);
  sweep_cmd->add_option("--modes", s_modes, "lossless modes")->check(CLI::IsMember({"cr", "tp"}))->delimiter(',');
  sweep_cmd->add_option("--csv", s_csv, "write records here instead of stdout");
  sweep_cmd->add_option("--svg", s_svg, "bitrate vs PSNR chart");
  sweep_cmd->add_flag("--no-reorder", s_no_reorder, "keep codes in row-major order");

  // gen
  std::string g_kind, g_type = "f32", g_out;
  std::vector<std::size_t> g_dims;
  std::uint64_t g_seed = 0;
  auto* gen_cmd = app.add_subcommand("gen", "write a synthetic fixture field");
  gen_cmd->add_option("--kind", g_kind, "constant | affine | gaussian-mix | spectral | uniform-noise")->required();
  gen_cmd->add_option("-d,--dims", g_dims, "extents slowest-first")->required()->expected(2, 3);
  gen_cmd->add_option("-t,--type", g_type, "element type")->check(CLI::IsMember({"f32", "f64"}));
  gen_cmd->add_option("--seed", g_seed, "generator seed");
  gen_cmd->add_option("-o,--output", g_out, "raw output path")->required();

  // tune
  FieldInput t_in;
  BoundInput t_bound;
  auto* tune_cmd = app.add_subcommand("tune", "print the auto-tuner's per-level error table");
  t_in.add_to(tune_cmd, false);
  t_bound.add_to(tune_cmd);

  // info
  std::string i_in;
  auto* info_cmd = app.add_subcommand("info", "print archive header and section sizes");
  info_cmd->add_option("-i,--input", i_in, "archive path")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (compress_cmd->parsed()) {
      const AnyField field = c_in.load();
      CompressOptions options;
      options.mode = *parse_mode(c_mode);
      options.reorder = !c_no_reorder;
      const auto archive = compress(field, c_bound.resolve(), options);
      write_file(c_out, archive);
      const double ratio = static_cast<double>(std::visit([](const auto& f) { return f.byte_size(); }, field)) /
                           static_cast<double>(archive.size());
      out << "wrote " << c_out << ": " << archive.size() << " bytes, CR " << format_number(ratio) << '\n';
      if (!c_record.empty()) {
        RunRecord r = analyze(field, archive, c_in.label());
        r.bound = c_bound.resolve();
        if (c_record == "csv") out << csv_header() << '\n' << to_csv(r) << '\n';
        else out << to_json(r) << '\n';
      }
    } else if (decompress_cmd->parsed()) {
      const auto archive = read_file(d_in);
      const AnyField field = decompress(archive);
      write_raw(d_out, field);
      out << "wrote " << d_out << ": " << dims_string(dims_of(field)) << ' ' << to_string(precision_of(field))
          << '\n';
    } else if (analyze_cmd->parsed()) {
      const auto archive = read_file(a_archive);
      const ArchiveInfo info = inspect(archive);
      // Dims and precision come from the archive unless given explicitly.
      if (a_in.dataset.empty()) {
        if (a_in.dims.empty()) a_in.dims.assign(info.dims.extent.begin(), info.dims.extent.begin() + info.dims.rank);
        if (!analyze_cmd->get_option("--type")->count()) a_in.type = to_string(info.precision);
      }
      const AnyField original = a_in.load();
      const RunRecord r = analyze(original, archive, a_in.label());
      if (a_format == "json") {
        out << to_json(r) << '\n';
      } else {
        if (!a_no_header) out << csv_header() << '\n';
        out << to_csv(r) << '\n';
      }
    } else if (sweep_cmd->parsed()) {
      const AnyField field = s_in.load();
      SweepPlan plan;
      plan.bound_mode = s_bound_mode == "rel" ? BoundMode::relative : BoundMode::absolute;
      plan.error_bounds = s_bounds;
      plan.modes.clear();
      for (const auto& m : s_modes) plan.modes.push_back(*parse_mode(m));
      plan.reorder = !s_no_reorder;
      const auto records = sweep(field, plan, s_in.label());
      std::string csv = csv_header() + '\n';
      for (const auto& r : records) csv += to_csv(r) + '\n';
      if (s_csv.empty()) out << csv;
      else write_text(s_csv, csv);
      if (!s_svg.empty()) write_text(s_svg, render_svg(records, "rate-distortion: " + s_in.label()));
    } else if (gen_cmd->parsed()) {
      const auto kind = parse_fixture_kind(g_kind);
      if (!kind) fail(ErrorCode::invalid_argument, "unknown fixture kind '" + g_kind + "'");
      const AnyField field =
          make_fixture(*kind, Dims::of(g_dims), g_type == "f64" ? Precision::f64 : Precision::f32, g_seed);
      write_raw(g_out, field);
      const auto bytes = read_file(g_out);
      char checksum[17];
      std::snprintf(checksum, sizeof checksum, "%016llx", static_cast<unsigned long long>(fnv1a(bytes)));
      out << "wrote " << g_out << ": " << to_string(*kind) << ' ' << dims_string(dims_of(field)) << ' ' << g_type
          << " seed " << g_seed << " fnv1a " << checksum << '\n';
    } else if (tune_cmd->parsed()) {
      const AnyField field = t_in.load();
      const std::string report = std::visit(
          [&](const auto& f) { return tune_report(f, resolve_error_bound(t_bound.resolve(), f)).to_json(); }, field);
      out << report << '\n';
    } else if (info_cmd->parsed()) {
      out << describe(inspect(read_file(i_in))) << '\n';
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, out, err);
}

}  // namespace hibound::tools
