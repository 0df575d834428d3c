#pragma once

#include "ldpcenc/encoder.hpp"
#include "ldpcenc/tanner.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>

namespace ldpcenc {

// FNV-1a over the canonical adjacency (dims, then each row's sorted bits).
// Identifies the matrix a schedule was compiled from.
std::uint64_t matrix_digest(const ParityCheckRows& h);

// Deterministic little-endian binary round-trip for Schedule.
void save_schedule(std::ostream& out, const Schedule& s);
Schedule load_schedule(std::istream& in);

void save_schedule_file(const std::string& path, const Schedule& s);
Schedule load_schedule_file(const std::string& path);

} // namespace ldpcenc
