#pragma once

// Command-line front end. run() is the whole program; tools/opn_gcd.cpp only
// forwards argv and the standard streams.
//
// Exit codes: 0 success, 1 a verification or verdict failed, 2 usage error,
// 3 arithmetic overflow, 4 checkpoint or output I/O error.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "opn/candidate.hpp"
#include "opn/checkpoint.hpp"
#include "opn/emit.hpp"
#include "opn/experiments.hpp"
#include "opn/identity.hpp"
#include "opn/random_triples.hpp"
#include "opn/scan.hpp"

namespace opn::cli {

inline constexpr const char* kThreadsEnv = "OPN_GCD_THREADS";

enum ExitCode : int { kOk = 0, kVerdictFailed = 1, kUsage = 2, kOverflow = 3, kIoError = 4 };

struct RunConfig {
  std::string subcommand;
  std::uint64_t limit = 0;
  std::uint64_t segment_size = kDefaultSegmentSize;
  unsigned thread_count = 1;
  std::string checkpoint_path;
  bool resume = false;
  std::optional<std::size_t> max_segments;
  emit::Format output_format = emit::Format::json;
  std::string output_path;
  std::uint64_t random_seed = kDefaultSeed;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thread count: flag, then environment, then hardware concurrency.
inline unsigned resolve_threads(std::optional<unsigned> flag) {
  if (flag) {
    if (*flag == 0) throw UsageError("--threads must be at least 1");
    return *flag;
  }
  if (const char* env = std::getenv(kThreadsEnv); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (*end != '\0' || v == 0 || v > 4096) throw UsageError(std::string(kThreadsEnv) + " must be a positive integer");
    return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace detail {

struct Inputs {
  std::string n = "";
  std::string i = "";
  std::string q = "";
  unsigned k = 1;
  std::uint64_t p = 0;
  std::string m = "";
  bool descartes = false;
  bool quasi = false;
  bool strict = false;
  std::size_t count = 10'000;
  std::string format = "json";
  std::optional<unsigned> threads;
  std::optional<std::size_t> max_segments;
};

inline Natural required_natural(const std::string& text, const char* flag) {
  if (text.empty()) throw UsageError(std::string("missing ") + flag);
  try {
    return parse_natural(text);
  } catch (const DomainError&) {
    throw UsageError(std::string("malformed value for ") + flag + ": " + text);
  }
}

/// Seeded property sweep over random abstract triples; one verdict per property.
inline std::vector<Verdict> property_sweep(std::size_t count, std::uint64_t seed) {
  struct Tally {
    std::string name;
    std::size_t failures = 0;
  };
  std::vector<Tally> tallies = {{"core lemmas"}, {"J formula"}, {"i | gcd(n,i)^2"},
                                {"equivalent conditions (four)"}, {"equivalent conditions (J=1)"},
                                {"squarefree implications"}, {"K bound and corollary"}};
  TripleGenerator gen(seed);
  for (std::size_t j = 0; j < count; ++j) {
    const AbstractTriple t = gen.next();
    const GcdProfile p = gcd_profile(t);
    const Natural g = gcd(t.n(), t.i());
    tallies[0].failures += !all_passed(verify_core_lemmas(p));
    tallies[1].failures += !verify_j_formula(t).passed;
    tallies[2].failures += !divides(t.i(), g * g);
    tallies[3].failures += !equivalent_conditions_one(t).verdict.passed;
    tallies[4].failures += !equivalent_conditions_two(t).verdict.passed;
    tallies[5].failures += !all_passed(squarefree_theorems(t));
    tallies[6].failures += !all_passed(k_bound_and_corollary(t));
  }
  std::vector<Verdict> out;
  for (const auto& t : tallies) {
    out.push_back({t.name, t.failures == 0,
                   std::to_string(t.failures) + " failures in " + std::to_string(count) + " triples"});
  }
  return out;
}

inline int emit_verdicts(const std::vector<Verdict>& verdicts, emit::Format format, std::ostream& out) {
  emit::write(emit::verdict_records(verdicts), format, out);
  return all_passed(verdicts) ? kOk : kVerdictFailed;
}

}  // namespace detail

/// Parses args and runs one subcommand, writing records to `out` (or
/// --output) and diagnostics to `err`.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact GCD identities for Eulerian-form inputs and sigma(m^2) range scans", "opn_gcd"};
  app.require_subcommand(1);
  RunConfig config;
  detail::Inputs in;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", in.format, "Output format: json, csv or table")
        ->check(CLI::IsMember({"json", "csv", "table"}));
    sub->add_option("--output", config.output_path, "Write records to this file instead of stdout");
    sub->add_option("--seed", config.random_seed, "Seed for randomized behavior");
    sub->add_option("--threads", in.threads, std::string("Worker threads (overrides ") + kThreadsEnv + ")");
  };
  auto scan_flags = [&](CLI::App* sub) {
    sub->add_option("--limit", config.limit, "Upper end of the scan")->required()->check(CLI::Range(std::uint64_t{1}, SegmentSieve::kMaxLimit));
    sub->add_option("--segment-size", config.segment_size, "Numbers per segment")->check(CLI::PositiveNumber);
    sub->add_option("--checkpoint", config.checkpoint_path, "Checkpoint file for resumable runs");
    sub->add_flag("--resume", config.resume, "Continue from --checkpoint if it exists");
    sub->add_option("--max-segments", in.max_segments, "Stop after this many segments");
  };

  auto* scan = app.add_subcommand("scan", "Count m <= limit with gcd(m, sigma(m^2)) = gcd(m^2, sigma(m^2))");
  scan_flags(scan);
  common(scan);
  auto* nonsol = app.add_subcommand("nonsolutions", "List m <= limit failing the equation");
  scan_flags(nonsol);
  common(nonsol);
  auto* table = app.add_subcommand("density-table", "Solution counts at 10, 100, ... up to limit");
  table->add_option("--limit", config.limit, "Largest limit")->required()->check(CLI::Range(std::uint64_t{1}, SegmentSieve::kMaxLimit));
  common(table);
  auto* a232354 = app.add_subcommand("a232354", "All 2 <= w <= limit with w | sigma(w^2)");
  a232354->add_option("--limit", config.limit, "Upper end")->required()->check(CLI::Range(std::uint64_t{2}, SegmentSieve::kMaxLimit));
  common(a232354);
  auto* profile = app.add_subcommand("profile", "GCD profile of an abstract triple (n, i, q, k)");
  profile->add_option("--n", in.n, "Odd n");
  profile->add_option("--i", in.i, "Odd index i dividing n^2");
  profile->add_option("--q", in.q, "Special base q, coprime to 2n^2");
  profile->add_option("--k", in.k, "Exponent k")->check(CLI::PositiveNumber);
  profile->add_flag("--descartes", in.descartes, "Use the Descartes spoof");
  common(profile);
  auto* spoof = app.add_subcommand("spoof-check", "Check a candidate q^k n^2 for (spoof) perfection");
  spoof->add_option("--n", in.n, "n (factored internally)");
  spoof->add_option("--q", in.q, "Special base q");
  spoof->add_option("--k", in.k, "Exponent k")->check(CLI::PositiveNumber);
  spoof->add_flag("--quasi", in.quasi, "Treat q as prime when summing divisors of q^k");
  spoof->add_flag("--strict", in.strict, "Require q prime and q = k = 1 (mod 4)");
  spoof->add_flag("--descartes", in.descartes, "Use the Descartes spoof");
  common(spoof);
  auto* roots = app.add_subcommand("roots", "Roots of u^2 + u + 1 modulo a prime p");
  roots->add_option("--p", in.p, "Prime p")->required();
  common(roots);
  auto* meyer = app.add_subcommand("meyerowitz", "Partial product of 1 - (p-1)/p^2 over primes p = 1 (mod 6)");
  meyer->add_option("--limit", config.limit, "Largest prime considered")->required()->check(CLI::Range(std::uint64_t{7}, std::uint64_t{4'294'967'295}));
  common(meyer);
  auto* wit = app.add_subcommand("witness", "Primes where gcd(m, sigma(m^2)) and gcd(m^2, sigma(m^2)) differ");
  wit->add_option("--m", in.m, "m >= 2")->required();
  common(wit);
  auto* props = app.add_subcommand("properties", "Seeded identity sweep over random abstract triples");
  props->add_option("--count", in.count, "Number of triples")->check(CLI::PositiveNumber);
  common(props);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    try {
      app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return kOk;
    } catch (const CLI::CallForAllHelp&) {
      out << app.help("", CLI::AppFormatMode::All);
      return kOk;
    } catch (const CLI::ParseError& e) {
      err << "error: " << e.what() << "\n\n" << app.help();
      return kUsage;
    }

    config.subcommand = app.get_subcommands().front()->get_name();
    config.output_format = *emit::parse_format(in.format);
    config.thread_count = resolve_threads(in.threads);
    config.max_segments = in.max_segments;
    if (config.resume && config.checkpoint_path.empty()) throw UsageError("--resume requires --checkpoint");

    std::ofstream file;
    std::ostream* sink = &out;
    if (!config.output_path.empty()) {
      file.open(config.output_path, std::ios::binary | std::ios::trunc);
      if (!file) {
        err << "error: cannot write " << config.output_path << '\n';
        return kIoError;
      }
      sink = &file;
    }
    const emit::Format fmt = config.output_format;
    ScanOptions scan_options;
    scan_options.threads = config.thread_count;

    int code = kOk;
    const std::string& sc = config.subcommand;
    if (sc == "scan" || sc == "nonsolutions") {
      CheckpointOptions opts;
      opts.scan = scan_options;
      opts.resume = config.resume;
      opts.max_segments = config.max_segments;
      const ScanSummary summary = scan_checkpointed(config.limit, config.segment_size, config.checkpoint_path, opts);
      if (!summary.complete) {
        err << "interrupted: completed through " << summary.hi << " of " << config.limit << '\n';
        return kOk;
      }
      if (sc == "scan") {
        const DensityRow row = make_density_row(config.limit, summary.solution_count);
        emit::write(emit::density_records(std::span(&row, 1)), fmt, *sink);
      } else {
        emit::write(emit::solution_records(summary.nonsolutions), fmt, *sink);
        if (summary.capped()) {
          err << "note: " << summary.nonsolution_count << " non-solutions, first " << summary.nonsolutions.size()
              << " listed\n";
        }
      }
    } else if (sc == "density-table") {
      emit::write(emit::density_records(density_table(decade_limits(config.limit), scan_options)), fmt, *sink);
    } else if (sc == "a232354") {
      std::vector<emit::A232354Entry> entries;
      for (const Natural w : divides_sigma_square_scan(config.limit, scan_options)) {
        entries.push_back({w, factor(w), prime_power_quotient(w)});
      }
      emit::write(emit::a232354_records(entries), fmt, *sink);
    } else if (sc == "profile") {
      const AbstractTriple t =
          in.descartes ? descartes_candidate().triple()
                       : AbstractTriple::make(detail::required_natural(in.n, "--n"), detail::required_natural(in.i, "--i"),
                                              detail::required_natural(in.q, "--q"), in.k);
      const GcdProfile p = gcd_profile(t);
      emit::write(emit::profile_records(p), fmt, *sink);
      std::vector<Verdict> verdicts = verify_core_lemmas(p);
      verdicts.push_back(verify_j_formula(t));
      verdicts.push_back(equivalent_conditions_one(t).verdict);
      verdicts.push_back(equivalent_conditions_two(t).verdict);
      for (auto& v : squarefree_theorems(t)) verdicts.push_back(std::move(v));
      for (auto& v : k_bound_and_corollary(t)) verdicts.push_back(std::move(v));
      verdicts.push_back({"G = H", true, g_equals_h(p) ? "G equals H" : "G differs from H"});
      if (fmt != emit::Format::json) *sink << '\n';
      code = detail::emit_verdicts(verdicts, fmt, *sink);
    } else if (sc == "spoof-check") {
      CandidateSpec spec;
      if (in.descartes) {
        spec = descartes_candidate().spec();
        spec.strict = in.strict;
      } else {
        const Natural n = detail::required_natural(in.n, "--n");
        if (n.is_zero()) throw UsageError("--n must be positive");
        spec.n_factors = factor(n);
        spec.q = detail::required_natural(in.q, "--q");
        spec.k = in.k;
        spec.quasi = in.quasi;
        spec.strict = in.strict;
      }
      std::vector<Verdict> verdicts = spoof_check(spec).checks;
      if (all_passed(verdicts)) verdicts.push_back(index_chain(EulerianCandidate(spec)).verdict);
      code = detail::emit_verdicts(verdicts, fmt, *sink);
    } else if (sc == "roots") {
      try {
        emit::write(emit::roots_records(cyclotomic_roots(in.p)), fmt, *sink);
      } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kVerdictFailed;
      }
    } else if (sc == "meyerowitz") {
      emit::write(emit::meyerowitz_records(meyerowitz_product(config.limit)), fmt, *sink);
    } else if (sc == "witness") {
      emit::write(emit::witness_records(witness(detail::required_natural(in.m, "--m"))), fmt, *sink);
    } else if (sc == "properties") {
      code = detail::emit_verdicts(detail::property_sweep(in.count, config.random_seed), fmt, *sink);
    }
    sink->flush();
    if (!*sink) {
      err << "error: writing output failed\n";
      return kIoError;
    }
    return code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ArithmeticOverflow& e) {
    err << "overflow: " << e.what() << '\n';
    return kOverflow;
  } catch (const CheckpointError& e) {
    err << "checkpoint error: " << e.what() << '\n';
    return kIoError;
  } catch (const IdentityMismatch& e) {
    err << "identity mismatch: " << e.what() << '\n';
    return kVerdictFailed;
  } catch (const InvalidCandidate& e) {
    err << "error: " << e.what() << '\n';
    return kVerdictFailed;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kVerdictFailed;
  }
}

}  // namespace opn::cli
