#pragma once

// Scenario steps shared by the command-line tool and the end-to-end tests.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "acas/auth_check.hpp"
#include "acas/receiver.hpp"
#include "acas/scenario.hpp"
#include "acas/system_side.hpp"
#include "acas/tesla_chain.hpp"

namespace acas {

// One draw of the scenario's random quantities, fixed by scenario.seed.
struct Realization {
  std::vector<SatelliteTruth> truths;  // multipath_e6 includes the drawn error
  std::vector<E1Estimates> estimates;
  std::vector<BgdRecord> bgd;          // published predictions
  double hwb_hat = 0.0;                // s
};

Realization realize(const Scenario& scenario);

KeyChain build_chain(const Scenario& scenario);
ChipStreamModel chip_model(const Scenario& scenario, int svid);
RecsFileHeader recs_header(const Scenario& scenario, int svid);

std::string recs_file_name(int svid);  // "E07.recs"
inline constexpr const char* kBgdFileName = "bgd.txt";
inline constexpr const char* kSnapshotFileName = "snapshot.snap";

// In-memory RECS files for every satellite plus the BGD file contents.
struct Publication {
  std::vector<RecsFile> recs;
  std::vector<BgdRecord> bgd;
};

Publication generate(const Scenario& scenario);
void write_publication(const Publication& publication, const std::filesystem::path& dir);
Publication read_publication(const Scenario& scenario, const std::filesystem::path& dir);

// Broad window (Eq. 10-11 composition) widened by the search span plus the
// worst range-rate drift between GST_j and the latest ECS start.
TimeWindow recording_window(const Scenario& scenario, const Realization& realization);

Snapshot simulate(const Scenario& scenario, const Realization& realization);

// Receiver clock used for the disclosure gate when none is given: the
// moment the last key the slot needs is disclosed.
std::int64_t default_now(const Scenario& scenario);

AuthReport authenticate(const Scenario& scenario, const Realization& realization,
                        const Publication& publication, const Snapshot& snapshot, std::int64_t now_gst);

std::string format_report(const AuthReport& report, std::int64_t slot_gst);
// One JSON object per satellite followed by a summary object, one per line.
std::string format_records(const AuthReport& report, std::int64_t slot_gst);

Octets read_file(const std::filesystem::path& path);                         // Error{Io}
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);  // Error{Io}

}  // namespace acas
