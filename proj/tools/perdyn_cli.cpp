#include "perdyn_cli.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "perdyn/chebbound.hpp"
#include "perdyn/error.hpp"
#include "perdyn/ffdyn.hpp"
#include "perdyn/ffield.hpp"
#include "perdyn/indicatrix.hpp"
#include "perdyn/wreath.hpp"

namespace perdyn::cli {

namespace {

constexpr std::size_t kExactFppBits = 1 << 16;

std::string dec6(const Rational& r) { return to_decimal(r, 6); }

// 1 - f^n(0) as an enclosure; exact while denominators stay moderate.
IntervalRational fpp_after(const IndicatrixPoly& f, std::size_t n) {
  IterateOptions opts;
  opts.denominator_cap_bits = kExactFppBits;
  const IntervalRational it = iterate_at_zero(f, n, kDefaultIteratePrecision, opts);
  return {1 - it.hi, 1 - it.lo};
}

Rational floor6(const Rational& r) {
  const BigInt scaled = numerator(r) * 1'000'000 / denominator(r);
  return Rational(scaled, 1'000'000);
}

std::string describe(const IntervalRational& r) {
  if (r.is_exact()) return to_string(r.lo) + " (" + dec6(r.lo) + ")";
  return "[" + dec6(floor6(r.lo)) + ", " + to_decimal_up(r.hi, 6) + "]";
}

void require_setting(unsigned d, unsigned e) {
  if (d < 2) throw InvalidInput("degree d must be at least 2");
  if (e < 1) throw InvalidInput("conductor e must be at least 1");
}

// -------------------------------------------------------------------------

struct FppArgs {
  unsigned d = 2, e = 1, n = 1;
  std::string epsilon;
};

int cmd_fpp(const FppArgs& a, std::ostream& out) {
  require_setting(a.d, a.e);
  if (a.n < 1) throw InvalidInput("n must be at least 1");
  std::optional<Rational> eps;
  if (!a.epsilon.empty()) eps = parse_rational(a.epsilon);

  const GaloisData gd = build_B1(a.d, a.e);
  out << "x^" << a.d << " + c over Q(zeta_" << a.e << "): n=" << a.n << " |A|=" << gd.A.size() << "\n";
  IntervalRational sum{0, 0};
  for (unsigned m : gd.A) {
    const IndicatrixPoly phi = indicatrix_of(gd.coset_permset(m));
    const bool fpf = coset_status(m, a.d) == CosetStatus::has_fpf_element;
    const IntervalRational fpp = fpp_after(phi, a.n);
    sum.lo += fpp.lo;
    sum.hi += fpp.hi;
    out << "coset m=" << m << ": status=" << (fpf ? "has-fpf-element" : "all-have-fixed-points")
        << " phi=" << phi.to_text() << " FPP=" << describe(fpp);
    if (eps) {
      const auto idx = epsilon_index(phi, *eps);
      out << " N_eps=" << (idx ? std::to_string(*idx) : std::string("diverges"));
    }
    out << "\n";
  }
  const Rational count(static_cast<long long>(gd.A.size()));
  out << "aggregate FPP = " << describe({sum.lo / count, sum.hi / count}) << "\n";
  return ok;
}

// -------------------------------------------------------------------------

struct RegimeArgs {
  unsigned d = 2, e = 1;
  std::string c = "1";
  std::size_t max_iter = kDefaultPreperiodIterations;
};

int cmd_regime(const RegimeArgs& a, std::ostream& out, std::ostream& err) {
  require_setting(a.d, a.e);
  const CycSetting s(a.d, a.e, CyclotomicInteger::parse(a.e, a.c));
  const OrbitAnalysis orbit = analyze_zero_orbit(s, a.max_iter);
  RegimeReport report;
  try {
    report = classify_regime(s, orbit.verdict);
  } catch (const HypothesisFailure& ex) {
    err << s.to_string() << ": " << ex.what() << "\n";
    return hypothesis;
  }
  out << s.to_string() << "\n";
  if (orbit.escape_index) {
    out << "orbit of 0 escapes at step " << *orbit.escape_index << " in embedding k=" << *orbit.escape_embedding
        << "\n";
  }
  for (const auto& [m, j] : report.fpf_witnesses) {
    out << "m=" << m << ": tau_{" << m << "," << j << "} is fixed-point-free\n";
  }
  for (unsigned m : report.all_fixed_witnesses) out << "m=" << m << ": every element has a fixed point\n";
  out << report.summary() << "\n";
  return ok;
}

// -------------------------------------------------------------------------

struct SweepArgs {
  unsigned d = 2, e = 1;
  std::string c = "1";
  std::uint64_t norm_bound = 0;
  std::string output;
  unsigned threads = 1;
  bool json = false;
  bool exact = false;
};

nlohmann::json row_json(const SweepRow& r, bool exact) {
  nlohmann::json j = {{"p", r.p},           {"f", r.f},
                      {"norm", r.norm},     {"wild", r.wild},
                      {"periodic", r.periodic}, {"total", r.total},
                      {"proportion", dec6(r.proportion())}, {"bijective", r.bijective},
                      {"image_sizes", r.image_sizes}};
  if (exact) j["proportion_exact"] = to_string(r.proportion());
  return j;
}

void write_sweep(const SweepArgs& a, const CycSetting& s, const std::vector<SweepRow>& rows,
                 std::ostream& out) {
  const auto summary = summarize(rows, a.norm_bound);
  if (a.json) {
    nlohmann::json doc;
    doc["setting"] = s.to_string();
    doc["norm_bound"] = a.norm_bound;
    doc["rows"] = nlohmann::json::array();
    for (const auto& r : rows) doc["rows"].push_back(row_json(r, a.exact));
    doc["summary"] = nlohmann::json::array();
    for (const auto& sm : summary) {
      nlohmann::json j = {{"wild", sm.wild}, {"primes", sm.count}};
      if (sm.count > 0) {
        j["max"] = dec6(sm.max);
        j["median"] = dec6(sm.median);
      }
      doc["summary"].push_back(j);
    }
    out << doc.dump(2) << "\n";
    return;
  }
  out << kSweepHeader << (a.exact ? ",proportion_exact" : "") << "\n";
  for (const auto& r : rows) out << format_row(r, a.exact) << "\n";
  for (const auto& sm : summary) {
    out << "# summary " << (sm.wild ? "wild" : "tame") << ": primes=" << sm.count;
    if (sm.count > 0) out << " max=" << dec6(sm.max) << " median=" << dec6(sm.median);
    out << " norms in (" << a.norm_bound / 10 << ", " << a.norm_bound << "]\n";
  }
}

int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err) {
  require_setting(a.d, a.e);
  if (a.norm_bound < 2) throw InvalidInput("norm bound must be at least 2");
  const CycSetting s(a.d, a.e, CyclotomicInteger::parse(a.e, a.c));
  const auto rows = sweep_rows(s, a.norm_bound, a.threads);
  if (a.output.empty()) {
    write_sweep(a, s, rows, out);
    return ok;
  }
  std::ofstream file(a.output, std::ios::binary);
  if (!file) {
    err << "cannot open '" << a.output << "' for writing\n";
    return io;
  }
  write_sweep(a, s, rows, file);
  file.flush();
  if (!file) {
    err << "write to '" << a.output << "' failed\n";
    return io;
  }
  return ok;
}

// -------------------------------------------------------------------------

struct WreathArgs {
  std::string base;
  unsigned n = 1;
  std::size_t cap = kDefaultEnumerationCap;
};

int cmd_wreathcheck(const WreathArgs& a, std::ostream& out) {
  PermSet g = a.base == "C2"   ? PermSet::cyclic(2)
              : a.base == "C3" ? PermSet::cyclic(3)
              : a.base == "S3" ? PermSet::symmetric(3)
                               : throw InvalidInput("base must be one of C2, C3, S3");
  if (a.n < 1) throw InvalidInput("n must be at least 1");
  const IndicatrixPoly phi = indicatrix_of(g);
  const IntervalRational rec = fpp_after(phi, a.n);
  const PermSet tower = iterated_wreath(g, a.n, a.cap);
  const Rational brute = fpp(tower);
  out << "[" << a.base << "]^" << a.n << ": " << tower.size() << " elements on " << tower.degree() << " points\n";
  out << "brute-force FPP = " << to_string(brute) << "\n";
  out << "recursion FPP   = " << describe(rec) << "\n";
  const bool match = rec.is_exact() && rec.lo == brute;
  out << (match ? "PASS" : "FAIL") << "\n";
  return match ? ok : failure;
}

// -------------------------------------------------------------------------

struct BoundArgs {
  unsigned d = 2, e = 1, n = 1;
  std::string c = "1";
  std::vector<std::uint64_t> grid;
  bool measure = false;
  std::string classes = "0";
};

// |S_n| / (q + 1), maximized over the primes of norm q; nullopt if there are none.
std::optional<Rational> measured_proportion(const CycSetting& s, std::uint64_t q, unsigned n) {
  const auto factors = prime_factors(q);
  if (factors.size() != 1) return std::nullopt;
  const std::uint64_t p = factors.front();
  if (normalized_conductor(s.e) % p == 0) return std::nullopt;
  std::optional<Rational> best;
  for (const auto& prime : primes_above(p, s.e)) {
    if (prime.norm() != q) continue;
    const auto prof = image_profile(build_graph(reduce_map(s, prime)));
    const Rational r(image_size(prof, n), q + 1);
    if (!best || r > *best) best = r;
  }
  return best;
}

int cmd_bound(const BoundArgs& a, std::ostream& out) {
  require_setting(a.d, a.e);
  if (a.n < 1) throw InvalidInput("n must be at least 1");
  if (a.grid.empty()) throw InvalidInput("at least one q is required");
  const CycSetting s(a.d, a.e, CyclotomicInteger::parse(a.e, a.c));
  const auto A = galois_A(a.d, a.e);
  BoundInputs in;
  in.n = a.n;
  in.d = a.d;
  in.A_order = A.size();
  in.B_order = BigInt(A.size()) * wreath_order(a.d, a.d, a.n);
  in.fpp_value = aggregate_fpp(a.d, a.e, a.n);
  if (a.classes.empty() || a.classes.find_first_not_of("0123456789") != std::string::npos) {
    throw InvalidInput("class count must be a nonnegative integer");
  }
  in.class_count_c = BigInt(a.classes.c_str());
  out << "# " << s.to_string() << " n=" << a.n << " |A|=" << A.size() << " B_order=" << in.B_order
      << " FPP(B_n)=" << to_string(in.fpp_value) << " c=" << in.effective_class_count() << "\n";
  out << "q,bound,error_term,measured,status\n";
  bool violated = false;
  for (std::uint64_t q : a.grid) {
    in.q = q;
    const ProportionBound b = proportion_bound(in);
    out << q << "," << to_decimal_up(b.total, 6) << "," << to_decimal_up(b.error_term, 6) << ",";
    if (!a.measure) {
      out << "-,-\n";
      continue;
    }
    const auto m = measured_proportion(s, q, a.n);
    if (!m) {
      out << "n/a,no prime of this norm\n";
      continue;
    }
    const bool ok_here = *m <= b.total;
    violated = violated || !ok_here;
    out << dec6(*m) << "," << (ok_here ? "ok" : "VIOLATION") << "\n";
  }
  return violated ? failure : ok;
}

} // namespace

// ---------------------------------------------------------------------------

std::uint64_t SweepRow::image_size(std::size_t n) const {
  return n < image_sizes.size() ? image_sizes[n] : image_sizes.back();
}

std::vector<SweepRow> sweep_rows(const CycSetting& s, std::uint64_t norm_bound, unsigned threads) {
  const std::vector<PrimeOfK> primes = prime_stream(s.e, norm_bound);
  std::vector<SweepRow> rows(primes.size());
  auto work = [&](std::size_t i) {
    const PrimeOfK& P = primes[i];
    const ReducedMap map = reduce_map(s, P);
    const FunctionalGraph g = build_graph(map);
    const ImageIteration prof = image_profile(g);
    SweepRow& r = rows[i];
    r.p = P.p;
    r.f = P.field.degree();
    r.norm = P.norm();
    r.zeta_index = P.field.index(P.zeta_image);
    r.wild = map.wild();
    r.periodic = prof.stable.size();
    r.total = g.size();
    r.bijective = is_bijective(g);
    r.image_sizes = prof.sizes;
  };
  if (threads <= 1 || primes.size() < 2) {
    for (std::size_t i = 0; i < primes.size(); ++i) work(i);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < primes.size();) {
        try {
          work(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

std::string format_row(const SweepRow& r, bool exact) {
  std::ostringstream os;
  os << r.p << "," << r.f << "," << r.norm << "," << (r.wild ? "true" : "false") << "," << r.periodic << ","
     << r.total << "," << dec6(r.proportion()) << "," << (r.bijective ? "true" : "false") << ",";
  for (std::size_t i = 0; i < r.image_sizes.size() && i < 8; ++i) os << (i ? ";" : "") << r.image_sizes[i];
  if (exact) os << "," << to_string(r.proportion());
  return os.str();
}

Rational median(std::vector<Rational> values) {
  if (values.empty()) throw InvalidInput("median of an empty list");
  std::sort(values.begin(), values.end());
  const std::size_t k = values.size() / 2;
  if (values.size() % 2 == 1) return values[k];
  return (values[k - 1] + values[k]) / 2;
}

std::vector<SweepSummary> summarize(const std::vector<SweepRow>& rows, std::uint64_t norm_bound) {
  std::vector<SweepSummary> out;
  for (bool wild : {false, true}) {
    SweepSummary sm;
    sm.wild = wild;
    std::vector<Rational> vals;
    for (const auto& r : rows) {
      if (r.wild == wild && r.norm > norm_bound / 10 && r.norm <= norm_bound) vals.push_back(r.proportion());
    }
    sm.count = vals.size();
    if (!vals.empty()) {
      sm.max = *std::max_element(vals.begin(), vals.end());
      sm.median = median(std::move(vals));
    }
    out.push_back(sm);
  }
  return out;
}

Rational aggregate_fpp(unsigned d, unsigned e, unsigned n) {
  const GaloisData gd = build_B1(d, e);
  Rational sum = 0;
  for (unsigned m : gd.A) {
    const IntervalRational r = fpp_after(indicatrix_of(gd.coset_permset(m)), n);
    if (!r.is_exact()) throw CapExceeded("exact FPP denominators exceed " + std::to_string(kExactFppBits) + " bits");
    sum += r.lo;
  }
  return sum / static_cast<long long>(gd.A.size());
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Periodic points of x^d + c modulo primes of cyclotomic fields"};
  app.name("perdyn");
  app.require_subcommand(1);
  app.set_config("--config", "", "INI file of option defaults; command-line flags take precedence");
  app.config_formatter(std::make_shared<CLI::ConfigINI>());

  FppArgs fa;
  auto* fpp_cmd = app.add_subcommand("fpp", "Fixed point proportions of the iterated coset wreath products");
  fpp_cmd->add_option("-d", fa.d, "map degree")->required();
  fpp_cmd->add_option("-e", fa.e, "cyclotomic conductor")->capture_default_str();
  fpp_cmd->add_option("-n", fa.n, "tree depth")->capture_default_str();
  fpp_cmd->add_option("--epsilon", fa.epsilon, "report the first n with FPP below epsilon");

  RegimeArgs ra;
  auto* regime_cmd = app.add_subcommand("regime", "Classify the limiting behaviour of periodic proportions");
  regime_cmd->add_option("-d", ra.d, "map degree")->required();
  regime_cmd->add_option("-e", ra.e, "cyclotomic conductor")->capture_default_str();
  regime_cmd->add_option("-c", ra.c, "constant, e.g. 1+2z with z = zeta_e")->capture_default_str();
  regime_cmd->add_option("--max-iter", ra.max_iter, "orbit steps before giving up")->capture_default_str();

  SweepArgs sa;
  auto* sweep_cmd = app.add_subcommand("sweep", "Periodic proportions for every prime up to a norm bound");
  sweep_cmd->add_option("-d", sa.d, "map degree")->required();
  sweep_cmd->add_option("-e", sa.e, "cyclotomic conductor")->capture_default_str();
  sweep_cmd->add_option("-c", sa.c, "constant")->capture_default_str();
  sweep_cmd->add_option("-N,--norm-bound", sa.norm_bound, "largest residue norm")->required();
  sweep_cmd->add_option("-o,--output", sa.output, "output file (default stdout)");
  sweep_cmd->add_option("--threads", sa.threads, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  sweep_cmd->add_flag("--json", sa.json, "emit JSON instead of CSV");
  sweep_cmd->add_flag("--exact", sa.exact, "append exact proportions");

  WreathArgs wa;
  auto* wreath_cmd = app.add_subcommand("wreathcheck", "Brute-force FPP of [G]^n against the recursion");
  wreath_cmd->add_option("base", wa.base, "C2, C3 or S3")->required();
  wreath_cmd->add_option("n", wa.n, "depth")->required();
  wreath_cmd->add_option("--cap", wa.cap, "enumeration cap")->capture_default_str();

  BoundArgs ba;
  auto* bound_cmd = app.add_subcommand("bound", "Effective upper bound on the image proportion");
  bound_cmd->add_option("-d", ba.d, "map degree")->required();
  bound_cmd->add_option("-e", ba.e, "cyclotomic conductor")->capture_default_str();
  bound_cmd->add_option("-n", ba.n, "iterate")->capture_default_str();
  bound_cmd->add_option("-c", ba.c, "map constant used by --measure")->capture_default_str();
  bound_cmd->add_option("-q", ba.grid, "residue norms (comma separated)")->required()->delimiter(',');
  bound_cmd->add_flag("--measure", ba.measure, "also measure |S_n|/(q+1) at primes of norm q");
  bound_cmd->add_option("--classes", ba.classes, "class count c (0 means B_order)")->capture_default_str();

  std::vector<const char*> argv{"perdyn"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return usage;
  }

  try {
    if (*fpp_cmd) return cmd_fpp(fa, out);
    if (*regime_cmd) return cmd_regime(ra, out, err);
    if (*sweep_cmd) return cmd_sweep(sa, out, err);
    if (*wreath_cmd) return cmd_wreathcheck(wa, out);
    if (*bound_cmd) return cmd_bound(ba, out);
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  } catch (const RamifiedPrime& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  } catch (const HypothesisFailure& e) {
    err << "error: " << e.what() << "\n";
    return hypothesis;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return resource;
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << "\n";
    return io;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return failure;
  }
  return usage;
}

} // namespace perdyn::cli
