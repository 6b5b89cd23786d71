// acas: generate RECS files, simulate a snapshot, authenticate it.
//
// Exit codes: 0 authenticated, 1 not authenticated, 2 usage or validation,
// 3 I/O, 4 key not yet disclosed, 5 malformed input file, 6 key fails the
// chain check.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "acas/error.hpp"
#include "acas/pipeline.hpp"
#include "acas/simd/kernels.hpp"

namespace fs = std::filesystem;
using namespace acas;

namespace {

enum Exit { kAuthenticated = 0, kNotAuthenticated = 1, kUsage = 2, kIo = 3, kNotDisclosed = 4, kFormat = 5, kKey = 6 };

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Io: return kIo;
    case ErrorKind::KeyNotDisclosed: return kNotDisclosed;
    case ErrorKind::KeyVerification: return kKey;
    case ErrorKind::BadMagic:
    case ErrorKind::BadVersion:
    case ErrorKind::BadChecksum:
    case ErrorKind::Truncated: return kFormat;
    case ErrorKind::Parse:
    case ErrorKind::Structural:
    case ErrorKind::Range:
    case ErrorKind::Validation: return kUsage;
  }
  return kUsage;
}

struct Options {
  std::string scenario_path;
  std::string out = "acas_out";
  std::optional<std::uint64_t> seed;
  std::string recs_dir;
  std::string snap;
  std::optional<std::int64_t> now;
};

Scenario load(const Options& o) {
  Scenario s;
  if (o.scenario_path.empty()) {
    s = default_scenario();
  } else {
    Octets text = read_file(o.scenario_path);
    s = parse_scenario(std::string_view(reinterpret_cast<const char*>(text.data()), text.size()));
  }
  if (o.seed) s.seed = *o.seed;
  return s;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create directory " + dir.string() + ": " + ec.message());
}

void write_text(const fs::path& path, const std::string& text) {
  write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

int run_generate(const Options& o) {
  Scenario s = load(o);
  Publication p = generate(s);
  write_publication(p, o.out);
  std::printf("wrote %zu RECS files and %s to %s\n", p.recs.size(), kBgdFileName, o.out.c_str());
  return 0;
}

int run_simulate(const Options& o) {
  Scenario s = load(o);
  Snapshot snap = simulate(s, realize(s));
  ensure_dir(o.out);
  fs::path path = o.snap.empty() ? fs::path(o.out) / kSnapshotFileName : fs::path(o.snap);
  write_file(path, write_snapshot(snap));
  std::printf("wrote %zu samples at %.0f Hz (%.6f s) to %s\n", snap.size(), snap.sample_rate(),
              snap.duration(), path.string().c_str());
  return 0;
}

int report(const Scenario& s, const AuthReport& r, const fs::path& out) {
  ensure_dir(out);
  std::string text = format_report(r, s.slot_gst());
  write_text(out / "report.txt", text);
  write_text(out / "report.jsonl", format_records(r, s.slot_gst()));
  std::fputs(text.c_str(), stdout);
  return r.position_authenticated ? kAuthenticated : kNotAuthenticated;
}

std::int64_t receiver_now(const Options& o, const Scenario& s) {
  if (o.now) return *o.now;
  if (s.now_gst) return *s.now_gst;
  return default_now(s);
}

int run_authenticate(const Options& o) {
  Scenario s = load(o);
  fs::path recs_dir = o.recs_dir.empty() ? fs::path(o.out) : fs::path(o.recs_dir);
  fs::path snap_path = o.snap.empty() ? fs::path(o.out) / kSnapshotFileName : fs::path(o.snap);
  Publication p = read_publication(s, recs_dir);
  Snapshot snap = read_snapshot(read_file(snap_path));
  AuthReport r = authenticate(s, realize(s), p, snap, receiver_now(o, s));
  return report(s, r, o.out);
}

int run_e2e(const Options& o) {
  Scenario s = load(o);
  Realization real = realize(s);
  Publication p = generate(s);
  write_publication(p, o.out);
  Snapshot snap = simulate(s, real);
  write_file(fs::path(o.out) / kSnapshotFileName, write_snapshot(snap));
  // Round trip through the files so e2e exercises the same codecs.
  Publication loaded = read_publication(s, o.out);
  Snapshot loaded_snap = read_snapshot(read_file(fs::path(o.out) / kSnapshotFileName));
  AuthReport r = authenticate(s, real, loaded, loaded_snap, receiver_now(o, s));
  return report(s, r, o.out);
}

int run_show_scenario(const Options& o) {
  std::fputs(scenario_to_json(load(o)).c_str(), stdout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Galileo ACAS spreading-code authentication at desk scale"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "acas 1.0");
  Options o;

  auto common = [&](CLI::App* cmd) {
    cmd->add_option("--scenario", o.scenario_path, "Scenario JSON (built-in default if omitted)")->check(CLI::ExistingFile);
    cmd->add_option("--out", o.out, "Output directory")->capture_default_str();
    cmd->add_option("--seed", o.seed, "Override the scenario seed");
  };

  auto* gen = app.add_subcommand("generate", "Publish RECS files and the BGD file");
  common(gen);
  auto* sim = app.add_subcommand("simulate", "Record a baseband snapshot");
  common(sim);
  sim->add_option("--snap", o.snap, "Snapshot path (default <out>/snapshot.snap)");
  auto* auth = app.add_subcommand("authenticate", "Decrypt, correlate and decide");
  common(auth);
  auth->add_option("--recs-dir", o.recs_dir, "Directory with RECS and BGD files (default <out>)");
  auth->add_option("--snap", o.snap, "Snapshot path (default <out>/snapshot.snap)");
  auth->add_option("--now", o.now, "Receiver GST second for the key disclosure gate");
  auto* e2e = app.add_subcommand("e2e", "generate, simulate and authenticate in one run");
  common(e2e);
  e2e->add_option("--now", o.now, "Receiver GST second for the key disclosure gate");
  auto* show = app.add_subcommand("scenario", "Print the effective scenario as JSON");
  common(show);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  try {
    if (*gen) return run_generate(o);
    if (*sim) return run_simulate(o);
    if (*auth) return run_authenticate(o);
    if (*e2e) return run_e2e(o);
    if (*show) return run_show_scenario(o);
  } catch (const Error& e) {
    std::fprintf(stderr, "acas: %s error: %s\n", to_string(e.kind()), e.what());
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acas: %s\n", e.what());
    return kIo;
  }
  return kUsage;
}
