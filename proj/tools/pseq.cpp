// pseq: generate, analyze, and search p-ary sequences with exact
// two-level-autocorrelation verdicts.
//
// Exit codes: 0 success / positive verdict, 1 negative verdict,
// 2 input or usage error, 3 enumeration budget exceeded,
// 4 cross-check failure.

#include <chrono>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pseq/analysis.hpp"
#include "pseq/gf.hpp"
#include "pseq/report_json.hpp"
#include "pseq/search.hpp"
#include "pseq/sequence.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerdictFalse = 1;
constexpr int kExitInputError = 2;
constexpr int kExitBudget = 3;
constexpr int kExitCrossCheck = 4;

constexpr double kCrossCheckTolerance = 1e-6;

std::string read_all(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

pseq::Sequence load_sequence(const std::string& path) { return pseq::parse_sequence(read_all(path)); }

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    out.push_back(std::stoll(item, &used));
    if (used != item.size()) throw std::invalid_argument("malformed integer list: " + text);
  }
  return out;
}

std::string join_ints(const std::vector<std::int64_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

struct GenerateCfg {
  std::int64_t p = 0;
  int m = 0;
  std::string poly;
  std::int64_t shift_to = 0;
  bool has_shift_to = false;
  std::int64_t rotate = 0;
  std::string out;
};

int run_generate(const GenerateCfg& cfg) {
  pseq::FieldCtx ctx = cfg.poly.empty() ? pseq::FieldCtx::find_primitive(cfg.p, cfg.m)
                                        : pseq::FieldCtx::from_poly(cfg.p, cfg.m, parse_int_list(cfg.poly));
  // Reproducibility: the sequence is only pinned down by the polynomial.
  std::cerr << "reduction polynomial: p=" << ctx.p() << " m=" << ctx.m()
            << " coeffs=" << join_ints(ctx.reduction_poly()) << " (constant term first)\n";

  pseq::Sequence seq = pseq::generate_mseq(ctx);
  if (cfg.has_shift_to) seq = pseq::constant_shift(seq, 0, cfg.shift_to);
  if (cfg.rotate != 0) seq = pseq::cyclic_shift(seq, cfg.rotate);

  const std::string text = pseq::emit_sequence(seq);
  if (cfg.out.empty() || cfg.out == "-") {
    std::cout << text;
  } else {
    std::ofstream out(cfg.out, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file: " + cfg.out);
    out << text;
  }
  return kExitOk;
}

struct AnalyzeCfg {
  std::string file = "-";
  bool fft = false;
  std::string format = "json";
};

std::string format_double(double v) {
  std::ostringstream ss;
  ss.precision(17);
  ss << v;
  return ss.str();
}

int run_analyze(const AnalyzeCfg& cfg) {
  const pseq::Sequence seq = load_sequence(cfg.file);
  const pseq::AnalysisReport rep = pseq::analyze(seq);
  std::optional<double> fft_dev;
  if (cfg.fft) fft_dev = pseq::fft_exact_max_deviation(seq);

  if (cfg.format == "json") {
    auto j = pseq::report_to_json(rep);
    if (fft_dev) j["fft_max_deviation"] = *fft_dev;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "p: " << rep.p << "\n";
    std::cout << "N: " << rep.N << "\n";
    std::cout << "mu: " << join_ints(rep.profile.mu) << "\n";
    std::cout << "balance: " << pseq::to_string(rep.balance.kind);
    if (rep.balance.exceptional) std::cout << " exceptional=" << *rep.balance.exceptional;
    if (rep.balance.t) std::cout << " t=" << *rep.balance.t;
    std::cout << "\n";
    std::cout << "period_admissible: " << (rep.period_admissible ? "true" : "false") << "\n";
    std::cout << "itla: " << (rep.itla ? "true" : "false") << "\n";
    std::cout << "first_failing_shift: ";
    if (rep.first_failing_shift) {
      std::cout << *rep.first_failing_shift << "\n";
    } else {
      std::cout << "-\n";
    }
    std::cout << "sum_mag_sq_is_one: " << (rep.sum_mag_sq.equals_integer(1) ? "true" : "false") << "\n";
    std::cout << "degenerate: " << (rep.degenerate ? "true" : "false") << "\n";
    if (fft_dev) std::cout << "fft_max_deviation: " << format_double(*fft_dev) << "\n";
  }
  return rep.itla ? kExitOk : kExitVerdictFalse;
}

struct FamilyCfg {
  std::string file = "-";
  std::string format = "text";
};

int run_family(const FamilyCfg& cfg) {
  const pseq::Sequence seq = load_sequence(cfg.file);
  const auto verdict = pseq::is_ideal_two_level(seq);
  if (!verdict.itla) {
    std::cerr << "input does not have the ideal two-level autocorrelation property (first failing shift "
              << *verdict.first_failing_shift << ")\n";
    return kExitVerdictFalse;
  }
  const auto balance = pseq::balance_verdict(pseq::multiplicity_profile(seq));
  if (!balance.exceptional) {
    std::cerr << "input has no exceptional element; constant-shift family is undefined\n";
    return kExitVerdictFalse;
  }
  const std::int64_t c_prime = *balance.exceptional;

  std::vector<pseq::Sequence> members;
  for (std::int64_t c = 0; c < seq.p(); ++c) {
    pseq::Sequence member = pseq::constant_shift(seq, c_prime, c);
    const auto check = pseq::is_ideal_two_level(member);
    const auto member_balance = pseq::balance_verdict(pseq::multiplicity_profile(member));
    if (!check.itla || !member_balance.exceptional || *member_balance.exceptional != c) {
      std::cerr << "family member for c=" << c << " failed verification\n";
      return kExitCrossCheck;
    }
    members.push_back(std::move(member));
  }

  if (cfg.format == "json") {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (std::int64_t c = 0; c < seq.p(); ++c) {
      nlohmann::ordered_json rec;
      rec["exceptional"] = c;
      rec["p"] = members[c].p();
      rec["N"] = members[c].period();
      rec["data"] = members[c].data();
      arr.push_back(rec);
    }
    std::cout << arr.dump() << "\n";
  } else {
    for (std::int64_t c = 0; c < seq.p(); ++c) {
      if (c) std::cout << "\n";
      std::cout << "# exceptional=" << c << "\n" << pseq::emit_sequence(members[c]);
    }
  }
  return kExitOk;
}

struct SearchCfg {
  std::int64_t p = 0;
  std::int64_t N = 0;
  bool canonical = false;
  bool no_prune = false;
  int jobs = 0;  // 0: fall back to PSEQ_JOBS, then 1
};

int run_search(const SearchCfg& cfg) {
  int jobs = cfg.jobs;
  if (jobs <= 0) {
    if (const char* env = std::getenv("PSEQ_JOBS")) jobs = static_cast<int>(std::strtol(env, nullptr, 10));
    if (jobs <= 0) jobs = 1;
  }
  if (jobs > 256) jobs = 256;

  pseq::SearchSpec spec;
  spec.p = cfg.p;
  spec.N = cfg.N;
  spec.canonicalize = cfg.canonical;
  spec.prune_balance = !cfg.no_prune;

  const pseq::SearchResult result = pseq::search_itla(spec, jobs);
  pseq::write_search_stream(std::cout, spec, result);
  return kExitOk;
}

struct BenchCfg {
  std::int64_t p = 0;
  int m = 0;
  std::int64_t N = 0;
  std::string method = "fft";
  int reps = 3;
  std::string format = "text";
};

pseq::Sequence bench_sequence(const BenchCfg& cfg) {
  if (cfg.m > 0) return pseq::generate_mseq(pseq::FieldCtx::find_primitive(cfg.p, cfg.m));
  if (cfg.N < 1) throw std::invalid_argument("bench needs --m or a positive --N");
  // Fixed seed: bench inputs are reproducible across runs and hosts.
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ (static_cast<std::uint64_t>(cfg.p) << 20) ^
                      static_cast<std::uint64_t>(cfg.N));
  std::uniform_int_distribution<std::int64_t> dist(0, cfg.p - 1);
  std::vector<std::int64_t> data(cfg.N);
  for (auto& v : data) v = dist(rng);
  return pseq::Sequence(cfg.p, std::move(data));
}

int run_bench(const BenchCfg& cfg) {
  using SpectrumFn = std::vector<std::complex<double>> (*)(const pseq::Sequence&);
  SpectrumFn fn = nullptr;
  if (cfg.method == "exact") {
    fn = pseq::correlation_spectrum_exact;
  } else if (cfg.method == "naive") {
    fn = pseq::correlation_spectrum_naive;
  } else if (cfg.method == "fft") {
    fn = pseq::correlation_spectrum_fft;
  } else {
    throw std::invalid_argument("unknown method: " + cfg.method);
  }
  if (cfg.reps < 1) throw std::invalid_argument("reps must be positive");

  const pseq::Sequence seq = bench_sequence(cfg);

  // Never time an unverified method: compare against the exact path first
  // (for the exact path itself, against the FFT).
  const auto reference = pseq::correlation_spectrum_exact(seq);
  const auto candidate = cfg.method == "exact" ? pseq::correlation_spectrum_fft(seq) : fn(seq);
  const double dev = pseq::max_spectrum_deviation(reference, candidate);
  if (dev > kCrossCheckTolerance) {
    std::cerr << "cross-check failed: max deviation " << format_double(dev) << " exceeds "
              << format_double(kCrossCheckTolerance) << "; refusing to report timings\n";
    return kExitCrossCheck;
  }

  std::vector<double> times_ms;
  times_ms.reserve(cfg.reps);
  for (int r = 0; r < cfg.reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    volatile auto spectrum = fn(seq).size();
    (void)spectrum;
    const auto t1 = std::chrono::steady_clock::now();
    times_ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  double total = 0.0;
  double best = times_ms[0];
  for (double t : times_ms) {
    total += t;
    best = std::min(best, t);
  }
  const double mean = total / static_cast<double>(times_ms.size());

  if (cfg.format == "json") {
    nlohmann::ordered_json j;
    j["p"] = seq.p();
    j["N"] = seq.period();
    j["method"] = cfg.method;
    j["reps"] = cfg.reps;
    j["times_ms"] = times_ms;
    j["min_ms"] = best;
    j["mean_ms"] = mean;
    j["crosscheck_max_dev"] = dev;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "method=" << cfg.method << " p=" << seq.p() << " N=" << seq.period()
              << " reps=" << cfg.reps << "\n";
    std::cout << "rep\tms\n";
    for (std::size_t i = 0; i < times_ms.size(); ++i) {
      std::cout << (i + 1) << "\t" << format_double(times_ms[i]) << "\n";
    }
    std::cout << "min_ms=" << format_double(best) << " mean_ms=" << format_double(mean)
              << " crosscheck_max_dev=" << format_double(dev) << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-ary sequence toolkit: exact two-level autocorrelation analysis"};
  app.require_subcommand(1);

  GenerateCfg gen_cfg;
  auto* gen = app.add_subcommand("generate", "Generate an m-sequence from the trace map");
  gen->add_option("--p", gen_cfg.p, "prime alphabet size")->required();
  gen->add_option("--m", gen_cfg.m, "extension degree (period p^m - 1)")->required();
  gen->add_option("--poly", gen_cfg.poly, "reduction polynomial c0,c1,...,cm (must be primitive)");
  auto* shift_opt = gen->add_option("--shift-to", gen_cfg.shift_to, "constant-shift so element C is exceptional");
  gen->add_option("--rotate", gen_cfg.rotate, "cyclic shift applied after generation");
  gen->add_option("--out", gen_cfg.out, "output file (default stdout)");

  AnalyzeCfg ana_cfg;
  auto* ana = app.add_subcommand("analyze", "Full verdict report for a sequence file");
  ana->add_option("file", ana_cfg.file, "sequence file, or - for stdin");
  ana->add_flag("--fft", ana_cfg.fft, "also report max deviation between FFT and exact spectra");
  ana->add_option("--format", ana_cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}));

  FamilyCfg fam_cfg;
  auto* fam = app.add_subcommand("family", "Emit the p-member constant-shift family of an ITLA sequence");
  fam->add_option("file", fam_cfg.file, "sequence file, or - for stdin");
  fam->add_option("--format", fam_cfg.format, "text or json")->check(CLI::IsMember({"json", "text"}));

  SearchCfg search_cfg;
  auto* sea = app.add_subcommand("search", "Exhaustively enumerate all ITLA sequences for (p, N)");
  sea->add_option("--p", search_cfg.p, "prime alphabet size")->required();
  sea->add_option("--N", search_cfg.N, "period")->required();
  sea->add_flag("--canonical", search_cfg.canonical, "emit canonical orbit representatives only");
  sea->add_flag("--no-prune", search_cfg.no_prune, "verification mode: no balance pruning");
  sea->add_option("--jobs", search_cfg.jobs, "worker threads (default: PSEQ_JOBS, then 1)");

  BenchCfg bench_cfg;
  auto* ben = app.add_subcommand("bench", "Time full-spectrum correlation methods (cross-checked first)");
  ben->add_option("--p", bench_cfg.p, "prime alphabet size")->required();
  ben->add_option("--m", bench_cfg.m, "use the (p, m) m-sequence");
  ben->add_option("--N", bench_cfg.N, "use a fixed-seed random sequence of period N");
  ben->add_option("--method", bench_cfg.method, "exact, naive, or fft")
      ->check(CLI::IsMember({"exact", "naive", "fft"}));
  ben->add_option("--reps", bench_cfg.reps, "timed repetitions (default 3)");
  ben->add_option("--format", bench_cfg.format, "text or json")->check(CLI::IsMember({"json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  gen_cfg.has_shift_to = shift_opt->count() > 0;

  try {
    if (gen->parsed()) return run_generate(gen_cfg);
    if (ana->parsed()) return run_analyze(ana_cfg);
    if (fam->parsed()) return run_family(fam_cfg);
    if (sea->parsed()) return run_search(search_cfg);
    if (ben->parsed()) return run_bench(bench_cfg);
  } catch (const pseq::capacity_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const pseq::parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
