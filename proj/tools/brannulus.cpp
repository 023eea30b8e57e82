// Command-line front end: analyze, render, verify.
#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "brannulus/error.hpp"
#include "brannulus/render.hpp"
#include "brannulus/report.hpp"

namespace fs = std::filesystem;
using namespace brannulus;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kMalformed = 1, kNotDistinct = 2, kNumerical = 3, kFilesystem = 4 };

struct FilesystemError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string input = "-";
  std::string out;
  double tol_sep = 1e-9;
  double tol_cv = 1e-9;
  bool seed_free = false;
  int samples = 512;
  std::string what;
  bool deep = false;
  std::string dir;
};

std::string read_all(const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FilesystemError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_all(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw FilesystemError("cannot write " + path);
}

Polynomial load(const std::string& path) {
  const json input = json::parse(read_all(path));
  return polynomial_from_json(input);
}

AnalysisOptions analysis_options(const Options& o) {
  AnalysisOptions opt;
  opt.distinctness = {o.tol_sep, o.tol_cv};
  opt.deep = o.deep;
  return opt;
}

// Errors go to stdout, or into `sink` when one is given.
int fail(int code, const std::string& kind, const std::string& message, json* sink = nullptr) {
  const json error{{"code", kind}, {"message", message}};
  if (sink) {
    *sink = error;
  } else {
    std::cout << dump_json(json{{"error", error}}) << "\n";
  }
  return code;
}

// Maps every failure onto the documented exit codes.
template <typename F>
int guarded(F&& body, json* sink = nullptr) {
  try {
    return body();
  } catch (const Error& e) {
    switch (e.code()) {
      case ErrorCode::ZeroLeadingCoefficient:
      case ErrorCode::DegreeTooSmall:
        return fail(kMalformed, std::string(to_string(e.code())), e.what(), sink);
      case ErrorCode::DistinctRootsRequired:
        return fail(kNotDistinct, std::string(to_string(e.code())), "distinct roots required", sink);
      default:
        return fail(kNumerical, std::string(to_string(e.code())), e.what(), sink);
    }
  } catch (const FilesystemError& e) {
    return fail(kFilesystem, "FilesystemError", e.what(), sink);
  } catch (const json::exception& e) {
    return fail(kMalformed, "MalformedInput", e.what(), sink);
  } catch (const std::invalid_argument& e) {
    return fail(kMalformed, "MalformedInput", e.what(), sink);
  }
}

int run_analyze(const Options& o) {
  return guarded([&] {
    const Analysis a = analyze(load(o.input), analysis_options(o));
    write_all(o.out, dump_json(report_json(a)) + "\n");
    return a.ok() ? kOk : kNumerical;
  });
}

int run_render(const Options& o) {
  return guarded([&] {
    const auto ctx = make_lift_context(load(o.input), {}, {o.tol_sep, o.tol_cv});
    RenderConfig cfg;
    cfg.samples_per_curve = o.samples;
    std::string svg;
    if (o.what == "annulus") {
      svg = render_annulus_complex(ctx.cells, ctx.critical.critical_values, cfg);
    } else {
      const auto traces = sample_branched_traces(ctx, cfg);
      svg = o.what == "branched" ? render_branched_annulus(ctx, traces, cfg) : render_cacti(ctx, traces, cfg);
    }
    write_all(o.out, svg);
    return kOk;
  });
}

json verify_one(const Options& o, const std::string& path, int& code) {
  json entry{{"input", path}};
  json error;
  const int rc = guarded(
      [&] {
        const Analysis a = analyze(load(path), analysis_options(o));
        entry["checks"] = checks_json(a.checks);
        entry["ok"] = a.ok();
        return a.ok() ? kOk : kNumerical;
      },
      &error);
  if (!error.is_null()) entry["error"] = error;
  if (!entry.contains("ok")) entry["ok"] = false;
  code = std::max(code, rc);
  return entry;
}

int run_verify(const Options& o) {
  std::vector<std::string> inputs;
  if (!o.dir.empty()) {
    std::error_code ec;
    for (const auto& e : fs::directory_iterator(o.dir, ec)) {
      if (e.path().extension() == ".json") inputs.push_back(e.path().string());
    }
    if (ec) return fail(kFilesystem, "FilesystemError", "cannot list " + o.dir);
    std::sort(inputs.begin(), inputs.end());
  } else {
    inputs.push_back(o.input);
  }
  int code = kOk;
  json results = json::array();
  for (const auto& path : inputs) results.push_back(verify_one(o, path, code));
  json report{{"schema_version", kSchemaVersion}, {"deep", o.deep}, {"results", results}, {"ok", code == kOk}};
  try {
    write_all(o.out, dump_json(report) + "\n");
  } catch (const FilesystemError& e) {
    return fail(kFilesystem, "FilesystemError", e.what());
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Level sets, direction sets and monodromy of complex polynomials"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("input", o.input, "Polynomial JSON file, - for stdin");
    sub->add_option("--out", o.out, "Output file (default stdout)");
    sub->add_option("--tol-sep", o.tol_sep, "Minimal root separation");
    sub->add_option("--tol-cv", o.tol_cv, "Minimal critical value modulus");
    sub->add_flag("--seed-free", o.seed_free, "Accepted for compatibility; the pipeline uses no randomness");
  };

  auto* analyze_cmd = app.add_subcommand("analyze", "Full analysis report as JSON");
  common(analyze_cmd);
  analyze_cmd->add_flag("--deep", o.deep, "Also compare against a run at half the step size");

  auto* render_cmd = app.add_subcommand("render", "SVG figure");
  common(render_cmd);
  render_cmd->add_option("--what", o.what, "annulus, branched or cacti")
      ->required()
      ->check(CLI::IsMember({"annulus", "branched", "cacti"}));
  render_cmd->add_option("--samples", o.samples, "Samples per curve")->check(CLI::Range(2, 1 << 20));

  auto* verify_cmd = app.add_subcommand("verify", "Run the invariant suite");
  common(verify_cmd);
  verify_cmd->add_flag("--deep", o.deep, "Include the step-halving regression");
  verify_cmd->add_option("--dir", o.dir, "Verify every .json file in a directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kMalformed;
  }

  if (*analyze_cmd) return run_analyze(o);
  if (*render_cmd) return run_render(o);
  return run_verify(o);
}
