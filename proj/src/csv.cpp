#include "brwre/csv.hpp"

#include <cmath>
#include <cstdio>

namespace brwre {

std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_metadata(std::ostream& os, const Metadata& meta) {
  for (const auto& [key, value] : meta) os << "# " << key << "=" << value << "\n";
}

void write_csv(std::ostream& os, const MomentProfile& profile, const Metadata& meta) {
  write_metadata(os, meta);
  os << "x,log_expected\n";
  for (std::size_t i = 0; i < profile.log_values.size(); ++i)
    os << profile.start + std::int64_t(i) << "," << format_double(profile.log_values[i])
       << "\n";
}

void write_csv(std::ostream& os, const GrowthProfile& profile, const Metadata& meta) {
  write_metadata(os, meta);
  os << "x,beta_hat,stderr\n";
  for (const GrowthPoint& p : profile.grid)
    os << format_double(p.x) << "," << format_double(p.beta_hat) << ","
       << format_double(p.std_error) << "\n";
}

void write_csv(std::ostream& os, const Trajectory& trajectory, const Metadata& meta) {
  write_metadata(os, meta);
  os << "n,Z_n,saturated\n";
  for (std::size_t n = 0; n < trajectory.totals.size(); ++n) {
    const bool sat =
        trajectory.saturated_at && std::int64_t(n) >= *trajectory.saturated_at;
    os << n << "," << trajectory.totals[n] << "," << (sat ? 1 : 0) << "\n";
  }
}

void write_csv(std::ostream& os, const std::vector<EmbeddedSample>& samples,
               const Metadata& meta) {
  write_metadata(os, meta);
  os << "j,xi_j\n";
  for (const EmbeddedSample& s : samples)
    for (std::size_t j = 0; j < s.xi.size(); ++j)
      os << j + 1 << "," << s.xi[j] << "\n";
}

void write_csv(std::ostream& os, const std::vector<PhiSweepRow>& rows, const Metadata& meta) {
  write_metadata(os, meta);
  os << "h,phi,regime\n";
  for (const PhiSweepRow& r : rows)
    os << format_double(r.h) << "," << format_double(r.phi) << "," << r.regime << "\n";
}

}  // namespace brwre
