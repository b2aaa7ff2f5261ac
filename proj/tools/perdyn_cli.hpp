#ifndef PERDYN_TOOLS_CLI_HPP
#define PERDYN_TOOLS_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "perdyn/cycmodel.hpp"
#include "perdyn/rational.hpp"

namespace perdyn::cli {

enum ExitCode : int { ok = 0, failure = 1, usage = 2, hypothesis = 3, io = 4, resource = 5 };

struct SweepRow {
  std::uint64_t p = 0;
  unsigned f = 1;
  std::uint64_t norm = 0;
  std::uint64_t zeta_index = 0;  // which prime above p
  bool wild = false;
  std::uint64_t periodic = 0;
  std::uint64_t total = 0;
  bool bijective = false;
  std::vector<std::uint64_t> image_sizes;  // |S_0|, |S_1|, ... through the first repeat

  Rational proportion() const { return Rational(periodic, total); }
  std::uint64_t image_size(std::size_t n) const;
};

// One row per unramified prime of norm <= norm_bound, in prime_stream order.
// Any thread count yields the same rows.
std::vector<SweepRow> sweep_rows(const CycSetting& s, std::uint64_t norm_bound, unsigned threads = 1);

inline constexpr const char* kSweepHeader = "p,f,norm,wild,periodic,total,proportion,bijective,image_sizes";

std::string format_row(const SweepRow& row, bool exact = false);

struct SweepSummary {
  bool wild = false;
  std::size_t count = 0;
  Rational max;
  Rational median;
};

// Rows with norm in (norm_bound / 10, norm_bound], tame and wild separately.
std::vector<SweepSummary> summarize(const std::vector<SweepRow>& rows, std::uint64_t norm_bound);

// Median of a nonempty list; the mean of the middle pair for even sizes.
Rational median(std::vector<Rational> values);

// Mean over the cosets of 1 - Phi_m^n(0) for x^d + c over Q(zeta_e), exactly.
Rational aggregate_fpp(unsigned d, unsigned e, unsigned n);

// Full command line without the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace perdyn::cli

#endif // PERDYN_TOOLS_CLI_HPP
