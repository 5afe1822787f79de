#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "brwre/moments.hpp"
#include "brwre/particle_sim.hpp"

namespace brwre {

// Round-trip-exact decimal form; infinities become "inf"/"-inf" tokens.
std::string format_double(double x);

using Metadata = std::vector<std::pair<std::string, std::string>>;

// '#'-prefixed key=value lines ahead of the header row.
void write_metadata(std::ostream& os, const Metadata& meta);

void write_csv(std::ostream& os, const MomentProfile& profile, const Metadata& meta);
void write_csv(std::ostream& os, const GrowthProfile& profile, const Metadata& meta);
void write_csv(std::ostream& os, const Trajectory& trajectory, const Metadata& meta);
void write_csv(std::ostream& os, const std::vector<EmbeddedSample>& samples,
               const Metadata& meta);

struct PhiSweepRow {
  double h = 0;
  double phi = 0;
  std::string regime;
};
void write_csv(std::ostream& os, const std::vector<PhiSweepRow>& rows, const Metadata& meta);

}  // namespace brwre
