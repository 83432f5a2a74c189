// darcais: command-line front end.
//
// Exit status: 0 all checks pass, 1 mathematical failure (report carries a
// witness), 2 usage or input error.

#include "darcais/cache.hpp"
#include "darcais/darcais.hpp"
#include "darcais/pf_tnn.hpp"
#include "darcais/report.hpp"
#include "darcais/rootcert.hpp"
#include "darcais/shape.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace darcais;
using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

constexpr unsigned kShapeCeiling = 300;
constexpr unsigned kShapeFull = 1000;

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string cache;
  unsigned jobs = default_workers();
  bool timings = false;
};

// Cache handling shared by all commands that touch the table.
class CacheSession {
 public:
  explicit CacheSession(const std::string& path) : path_(path) {
    if (!path_.empty()) loaded_ = load_cache_into(path_, shared_table());
  }
  void finish(unsigned n) {
    if (!path_.empty()) extend_cache(path_, shared_table(), n, loaded_);
  }

 private:
  std::string path_;
  unsigned loaded_ = 0;
};

void emit(const CertReport& r, const Common& c, bool pretty) {
  json j = r.to_json(c.timings);
  std::cout << (pretty ? j.dump(2) : j.dump()) << '\n';
}

json strings(const std::vector<BigInt>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

json strings(const ExactPoly& p) {
  json a = json::array();
  for (const auto& x : p.coeffs()) a.push_back(to_string(x));
  return a;
}

// n! P_n(x) / x.
IntPoly normalized(unsigned n) {
  if (n == 0) throw UsageError("n must be positive here");
  return *divide_exact(shared_table().scaled(n), IntPoly::monomial(BigInt(1), 1));
}

// Coefficients from an inline list ("2 2 1") or a file; errors name line and
// column.
ExactPoly read_coefficients(const std::string& arg) {
  std::string text = arg;
  std::string origin = "<inline>";
  if (std::filesystem::is_regular_file(arg)) {
    std::ifstream in(arg);
    if (!in) throw UsageError("cannot open " + arg);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
    origin = arg;
  }
  std::vector<BigRat> v;
  std::size_t line = 1, col = 1, i = 0;
  while (i < text.size()) {
    char ch = text[i];
    if (ch == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (ch == ' ' || ch == '\t' || ch == '\r' || ch == ',') {
      ++col;
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != ',') ++i;
    std::string tok = text.substr(start, i - start);
    try {
      v.push_back(parse_rational(tok));
    } catch (const std::exception&) {
      throw UsageError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": bad coefficient '" + tok +
                       "'");
    }
    col += i - start;
  }
  ExactPoly p(std::move(v));
  if (p.is_zero()) throw UsageError(origin + ": no nonzero coefficients");
  return p;
}

std::vector<long> parse_roots_list(const std::string& s) {
  std::vector<long> out;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    try {
      std::size_t used = 0;
      long v = std::stol(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError("--strip-linear expects integers a,b,... (got '" + tok + "')");
    }
  }
  return out;
}

// Divides out (x + a) for each a; a leftover remainder is an input error.
ExactPoly strip_linear(const ExactPoly& p, const std::vector<long>& shifts) {
  std::vector<ExactPoly> f;
  for (long a : shifts) f.push_back(ExactPoly({BigRat(a), BigRat(1)}));
  try {
    return verify_factorization(p, f);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

// Divides out every linear factor (x + k), k a nonnegative integer root
// position, repeated roots included; returns the k removed.
std::vector<long> strip_integer_roots(ExactPoly& p) {
  std::vector<long> removed;
  for (;;) {
    bool found = false;
    if (p.size() <= 1) break;
    if (p[0] == 0) {
      p = divmod(p, ExactPoly({BigRat(0), BigRat(1)})).quotient;
      removed.push_back(0);
      continue;
    }
    for (const RootInterval& iv : isolate_real_roots(p)) {
      BigInt k;
      mpz_fdiv_q(k.get_mpz_t(), iv.upper.get_num_mpz_t(), iv.upper.get_den_mpz_t());
      for (BigInt x = k; BigRat(x) > iv.lower; --x) {
        if (x >= 0 || evaluate(p, BigRat(x)) != 0) continue;
        p = divmod(p, ExactPoly({BigRat(-x), BigRat(1)})).quotient;
        removed.push_back(-x.get_si());
        found = true;
        break;
      }
      if (found) break;
    }
    if (!found) break;
  }
  std::sort(removed.begin(), removed.end());
  return removed;
}

// ---------------------------------------------------------------- poly

struct PolyArgs {
  unsigned n = 0;
  bool rational = false;
  bool shifted = false;
};

int cmd_poly(const PolyArgs& a, const Common& c) {
  CacheSession cache(c.cache);
  std::string out;
  if (a.shifted) {
    out = a.rational ? to_line(q_poly(a.n)) : to_line(shared_table().shifted_scaled(a.n));
  } else if (a.rational) {
    out = to_line(darcais_poly(a.n));
  } else if (a.n == 0) {
    out = "1";
  } else {
    out = to_line(normalized(a.n));
  }
  cache.finish(a.n);
  std::cout << out << '\n';
  return kExitPass;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::string conjecture = "1";
  unsigned min_n = 1;
  unsigned max_n = 0;
  bool force = false;
  std::string fault_route;
};

std::vector<Route> routes_for(const std::string& which) {
  if (which == "1") return {Route::kSeries, Route::kTrivialLeg, Route::kTrivialArm, Route::kBinomial};
  if (which == "no") return {Route::kFullHook};
  if (which == "corollary") return {Route::kTrivialArm, Route::kBinomial};
  if (which == "all") return all_routes();
  throw UsageError("--conjecture must be one of 1, no, corollary, all");
}

int cmd_verify(const VerifyArgs& a, const Common& c) {
  std::vector<Route> routes = routes_for(a.conjecture);
  if (a.min_n == 0 || a.min_n > a.max_n) throw UsageError("need 1 <= --min-n <= --max-n");
  VerifyOptions opts;
  opts.workers = c.jobs;
  for (Route r : routes) {
    unsigned bound = detail::bound_for(r, opts.bounds);
    if (a.max_n > bound && !a.force) {
      throw UsageError("--max-n " + std::to_string(a.max_n) + " exceeds the feasibility bound " +
                       std::to_string(bound) + " of route " + std::string(to_string(r)) + "; pass --force to override");
    }
  }
  if (a.force) {
    for (unsigned* b : {&opts.bounds.series, &opts.bounds.full_hook, &opts.bounds.trivial_leg,
                        &opts.bounds.trivial_arm, &opts.bounds.binomial}) {
      *b = std::max(*b, a.max_n);
    }
  }
  if (!a.fault_route.empty()) {
    std::string target = a.fault_route;
    opts.tamper = [target](Route r, ExactPoly& p) {
      if (to_string(r) == target) p += ExactPoly::monomial(BigRat(1), p.size() / 2);
    };
  }
  CacheSession cache(c.cache);
  int status = kExitPass;
  for (unsigned n = a.min_n; n <= a.max_n; ++n) {
    CertReport r = verify_identity(n, routes, opts);
    emit(r, c, false);
    std::cout.flush();
    if (r.verdict == Verdict::kFail) status = kExitFail;
  }
  cache.finish(a.max_n);
  return status;
}

// ---------------------------------------------------------------- roots

struct RootsArgs {
  std::optional<unsigned> n;
  std::string poly;
  bool hurwitz = false;
  bool sturm = false;
  bool isolate = false;
  bool square_free = false;
  std::string strip;
  bool strip_integer = false;
  unsigned batch_max_n = 0;
};

json intervals_json(const std::vector<RootInterval>& iv) {
  json a = json::array();
  for (const auto& i : iv) a.push_back({{"lower", to_string(i.lower)}, {"upper", to_string(i.upper)}, {"count", i.count}});
  return a;
}

CertReport roots_report(const ExactPoly& p, json target, const RootsArgs& a) {
  CertReport r;
  r.kind = "roots";
  r.target = std::move(target);
  r.target["coefficients"] = strings(p);
  const bool all = !(a.hurwitz || a.sturm || a.isolate || a.square_free);
  json d;
  d["degree"] = p.size() - 1;
  json witness = json::object();
  if (all || a.sturm) {
    RootSummary s = summarize_roots(p);
    d["real_root_count"] = s.real_root_count;
    d["nonreal_pair_count"] = s.nonreal_pair_count;
    d["all_real_roots_negative"] = s.all_real_negative;
  }
  if (all || a.isolate) d["intervals"] = intervals_json(isolate_real_roots(p));
  if (all || a.square_free) {
    bool sf = is_square_free(p);
    d["square_free"] = sf;
    if (!sf) {
      witness["square_free"] = {{"gcd_with_derivative", strings(gcd(p, derivative(p)))}};
    }
  }
  if (all || a.hurwitz) {
    RouthVerdict h = hurwitz_stable(p);
    d["hurwitz"] = {{"status", to_string(h.status)}, {"stage", h.stage ? json(*h.stage) : json(nullptr)}};
    if (!h.stable()) witness["hurwitz"] = {{"status", to_string(h.status)}, {"routh_row", *h.stage}};
  }
  r.details = std::move(d);
  if (!witness.empty()) {
    r.verdict = Verdict::kFail;
    r.witness = std::move(witness);
  }
  return r;
}

ExactPoly prepare_n(unsigned n, const RootsArgs& a, json& target) {
  ExactPoly p = to_rational(normalized(n));
  target = {{"n", n}, {"polynomial", "n!P_n/x"}};
  if (!a.strip.empty()) {
    auto s = parse_roots_list(a.strip);
    p = strip_linear(p, s);
    target["stripped_linear"] = s;
  }
  if (a.strip_integer) target["stripped_integer_roots"] = strip_integer_roots(p);
  return p;
}

int cmd_roots(const RootsArgs& a, const Common& c) {
  int given = (a.n ? 1 : 0) + (a.poly.empty() ? 0 : 1) + (a.batch_max_n ? 1 : 0);
  if (given != 1) throw UsageError("roots needs exactly one of --n, --poly, --batch-max-n");
  CacheSession cache(c.cache);
  if (a.batch_max_n) {
    RootsArgs b = a;
    if (!(b.hurwitz || b.sturm || b.isolate || b.square_free)) b.hurwitz = b.square_free = true;
    shared_table().ensure(a.batch_max_n);
    int status = kExitPass;
    const unsigned chunk = std::max(1U, c.jobs) * 4;
    for (unsigned lo = 1; lo <= a.batch_max_n; lo += chunk) {
      unsigned hi = std::min(a.batch_max_n, lo + chunk - 1);
      auto batch = parallel_map(hi - lo + 1, c.jobs, [&](std::size_t i) {
        json target;
        ExactPoly p = prepare_n(lo + static_cast<unsigned>(i), b, target);
        return roots_report(p, target, b);
      });
      for (const auto& r : batch) {
        emit(r, c, false);
        if (!r.passed()) status = kExitFail;
      }
    }
    cache.finish(a.batch_max_n);
    return status;
  }
  json target;
  ExactPoly p;
  if (a.n) {
    p = prepare_n(*a.n, a, target);
  } else {
    p = read_coefficients(a.poly);
    target = {{"source", a.poly}};
    if (!a.strip.empty()) {
      auto s = parse_roots_list(a.strip);
      p = strip_linear(p, s);
      target["stripped_linear"] = s;
    }
    if (a.strip_integer) target["stripped_integer_roots"] = strip_integer_roots(p);
  }
  CertReport r = roots_report(p, target, a);
  if (a.n) cache.finish(*a.n);
  emit(r, c, true);
  return r.passed() ? kExitPass : kExitFail;
}

// ---------------------------------------------------------------- pf

struct PFArgs {
  std::optional<unsigned> n;
  std::string coeffs;
  std::size_t max_order = 32;
  std::size_t max_shift = 8;
};

int cmd_pf(const PFArgs& a, const Common& c) {
  if ((a.n ? 1 : 0) + (a.coeffs.empty() ? 0 : 1) != 1) throw UsageError("pf needs exactly one of --n, --coeffs");
  CacheSession cache(c.cache);
  CertReport r;
  r.kind = "pf";
  std::vector<BigInt> seq;
  if (a.n) {
    ExactPoly p = to_rational(normalized(*a.n));
    std::vector<long> removed = strip_integer_roots(p);
    removed.insert(removed.begin(), 0);
    r.target = {{"n", *a.n}, {"polynomial", "n!P_n"}, {"stripped_integer_roots", removed}};
    IntPoly q = primitive_integer(p);
    seq.assign(q.coeffs().begin(), q.coeffs().end());
    cache.finish(*a.n);
  } else {
    ExactPoly p = read_coefficients(a.coeffs);
    for (const auto& x : p.coeffs()) {
      if (x.get_den() != 1) throw UsageError("--coeffs: PF sequences here must be integers");
      seq.push_back(x.get_num());
    }
    r.target = {{"source", a.coeffs}};
  }
  r.target["sequence"] = strings(seq);
  std::optional<ToeplitzSeq<BigInt>> ts;
  try {
    ts.emplace(seq);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  PFVerdict v = pf_test(*ts, PFSearchLimits{a.max_order, a.max_shift});
  r.details = {{"is_pf", v.is_pf}, {"real_rooted", v.real_rooted}, {"witness_search_exhausted", v.witness_search_exhausted}};
  if (!v.is_pf) {
    r.verdict = Verdict::kFail;
    if (v.witness) {
      const auto& w = *v.witness;
      r.witness = {{"order", w.order},
                   {"row_start", w.row_start},
                   {"col_start", w.col_start},
                   {"rows", std::to_string(w.row_start + 1) + "-" + std::to_string(w.row_start + w.order)},
                   {"cols", std::to_string(w.col_start + 1) + "-" + std::to_string(w.col_start + w.order)},
                   {"determinant", to_string(w.determinant)}};
    } else {
      ExactPoly g = ts->generating_polynomial();
      IntPoly sq = square_free_part(primitive_integer(g));
      r.witness = {{"sturm_real_root_count", count_real_roots(SturmChain(sq), std::nullopt, std::nullopt)},
                   {"distinct_root_count", sq.size() - 1}};
    }
  }
  emit(r, c, true);
  return r.passed() ? kExitPass : kExitFail;
}

// ---------------------------------------------------------------- shape

struct ShapeArgs {
  unsigned min_n = 1;
  unsigned max_n = 50;
  bool full = false;
  std::string format = "csv";
  unsigned fault_n = 0;
};

int cmd_shape(const ShapeArgs& a, const Common& c) {
  unsigned last = a.full ? kShapeFull : a.max_n;
  if (!a.full && a.max_n > kShapeCeiling) {
    throw UsageError("--max-n above " + std::to_string(kShapeCeiling) + " needs --full-1000");
  }
  if (a.min_n == 0 || a.min_n > last) throw UsageError("need 1 <= --min-n <= --max-n");
  CacheSession cache(c.cache);
  ShapeRunOptions opts;
  opts.workers = c.jobs;
  if (a.fault_n) {
    unsigned bad = a.fault_n;
    opts.source = [bad](unsigned n) {
      auto v = q_coefficients(n);
      if (n == bad && v.size() > 2) v[v.size() / 2] = 0;
      return v;
    };
  }
  auto reps = shape_report(a.min_n, last, opts);
  if (a.format == "csv") std::cout << shape_csv_header() << '\n';
  int status = kExitPass;
  for (const auto& r : reps) {
    if (a.format == "csv") {
      std::cout << shape_csv_row(r) << '\n';
    } else {
      emit(r, c, false);
    }
    if (!r.passed()) {
      status = kExitFail;
      if (a.format == "csv") std::cerr << r.to_json(c.timings).dump() << '\n';
    }
  }
  cache.finish(last);
  return status;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--cache", c.cache, "Cache file (default: $" + std::string(kCacheEnvVar) + ")");
  sub->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::PositiveNumber);
  sub->add_flag("--timings", c.timings, "Include wall-clock timings in reports");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact D'Arcais polynomial computations and certificates"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  Common common;
  common.cache = default_cache_path();

  PolyArgs pa;
  auto* poly = app.add_subcommand("poly", "Print n! P_n / x (or P_n with --rational)");
  poly->add_option("n", pa.n, "Index")->required();
  auto* norm_flag = poly->add_flag("--normalized", "Integer coefficients of n! P_n / x (default)");
  poly->add_flag("--rational", pa.rational, "Rational coefficients of P_n")->excludes(norm_flag);
  poly->add_flag("--shifted", pa.shifted, "Q_n(z) = P_n(z + 1) instead (n! Q_n when normalized)");
  add_common(poly, common);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Check the hook-length identities exactly, one JSON line per n");
  verify->add_option("--conjecture", va.conjecture, "Route set: 1, no, corollary or all")->capture_default_str();
  verify->add_option("--max-n", va.max_n, "Largest n")->required();
  verify->add_option("--min-n", va.min_n, "Smallest n")->capture_default_str();
  verify->add_flag("--force", va.force, "Run past the feasibility bounds");
  verify->add_option("--inject-fault", va.fault_route)->group("");
  add_common(verify, common);

  RootsArgs ra;
  auto* roots = app.add_subcommand("roots", "Root certificates for n! P_n / x or a given polynomial");
  roots->add_option("--n", ra.n, "Use n! P_n / x");
  roots->add_option("--poly", ra.poly, "Coefficients a0 a1 ... (file or inline list)");
  roots->add_option("--batch-max-n", ra.batch_max_n, "Certify n = 1..N, one JSON line each");
  roots->add_flag("--hurwitz", ra.hurwitz, "Routh-Hurwitz stability");
  roots->add_flag("--sturm", ra.sturm, "Real root count");
  roots->add_flag("--isolate", ra.isolate, "Unit-width isolating intervals");
  roots->add_flag("--square-free", ra.square_free, "Square-free test");
  roots->add_option("--strip-linear", ra.strip, "Divide by (x + a) for each a in a comma list");
  roots->add_flag("--strip-integer-roots", ra.strip_integer, "Divide out all linear factors with integer roots");
  add_common(roots, common);

  PFArgs fa;
  auto* pf = app.add_subcommand("pf", "Polya frequency test with a negative-minor witness");
  pf->add_option("--n", fa.n, "Use n! P_n with x and all integer-root factors removed");
  pf->add_option("--coeffs", fa.coeffs, "Sequence a0 a1 ... (file or inline list)");
  pf->add_option("--max-order", fa.max_order, "Largest minor order searched")->capture_default_str();
  pf->add_option("--max-shift", fa.max_shift, "Largest row shift searched")->capture_default_str();
  add_common(pf, common);

  ShapeArgs sa;
  auto* shape = app.add_subcommand("shape", "Unimodality and (ultra-)log-concavity of Q_n");
  shape->add_option("--max-n", sa.max_n, "Largest n (at most 300 without --full-1000)")->capture_default_str();
  shape->add_option("--min-n", sa.min_n, "Smallest n")->capture_default_str();
  shape->add_flag("--full-1000", sa.full, "Run n = 1..1000");
  shape->add_option("--format", sa.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  shape->add_option("--inject-fault", sa.fault_n)->group("");
  add_common(shape, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*poly) return cmd_poly(pa, common);
    if (*verify) return cmd_verify(va, common);
    if (*roots) return cmd_roots(ra, common);
    if (*pf) return cmd_pf(fa, common);
    if (*shape) return cmd_shape(sa, common);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CacheError& e) {
    std::cerr << "error: cache " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
