#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dipstr/io.hpp"
#include "dipstr/lr.hpp"
#include "dipstr/oracle.hpp"

namespace {

using namespace dipstr;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitModel = 3;
constexpr int kExitValidation = 4;

struct Options {
  std::string db_path;
  std::string case_path;
  std::string methods = "full";
  std::string sweep_methods = "full,plugin,gt";
  double alpha = 1.0;
  long m = 100;
  std::string k_prior = "uniform";
  std::vector<std::string> k_priors;  // sweep only
  std::string alpha_grid;
  std::string m_grid = "100";
  std::string out_path;
  std::uint64_t seed = 0;
  long samples = 1000000;
};

template <typename Fn>
void with_output(const std::string& out_path, Fn&& fn) {
  if (out_path.empty()) {
    fn(std::cout);
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw ParseError("cannot open output file " + out_path);
  fn(out);
}

void print_lr_record(std::ostream& out, const std::string& locus,
                     const PriorConfig& prior, const LrResult& r) {
  out << "locus=" << locus << " method=" << method_label(r.method)
      << " alpha=" << fmt_short(prior.alpha) << " m=" << prior.m
      << " k_prior=" << k_prior_label(prior.k_prior)
      << " status=" << status_label(r.status)
      << " denominator=" << fmt_short(r.denominator)
      << " lr=" << fmt_short(r.lr) << " log10_lr=" << fmt_short(r.log10_lr);
  for (const auto& [key, value] : r.diagnostics)
    out << " " << key << "=" << fmt_short(value);
  out << "\n";
}

int cmd_lr(const Options& o) {
  const AlleleDatabase db = load_database(o.db_path);
  const std::vector<CaseInput> cases = load_cases(o.case_path);
  const PriorConfig prior{o.m, o.alpha, parse_k_prior(o.k_prior)};
  const std::vector<Method> methods = parse_methods(o.methods);
  with_output(o.out_path, [&](std::ostream& out) {
    for (const Method method : methods) {
      std::vector<LrResult> results;
      results.reserve(cases.size());
      for (const CaseInput& c : cases) {
        results.push_back(compute_lr(c, db, prior, method));
        print_lr_record(out, c.locus, prior, results.back());
      }
      if (cases.size() > 1)
        print_lr_record(out, "combined", prior, combine_loci(results));
    }
  });
  return kExitOk;
}

int cmd_sweep(const Options& o) {
  const AlleleDatabase db = load_database(o.db_path);
  const std::vector<CaseInput> cases = load_cases(o.case_path);
  if (cases.size() != 1)
    throw ParseError("sweep expects a single-locus case file, got " +
                     std::to_string(cases.size()) + " entries");
  const std::vector<double> alphas = parse_alpha_grid(o.alpha_grid);
  std::vector<long> m_values = parse_m_grid(o.m_grid);
  std::sort(m_values.begin(), m_values.end());  // rows sorted by (method, alpha, m)
  std::vector<KPrior> priors;
  for (const auto& spec : o.k_priors) priors.push_back(parse_k_prior(spec));
  const std::vector<Method> methods = parse_methods(o.sweep_methods);
  const std::vector<SweepRow> rows =
      sensitivity_sweep(cases.front(), db, alphas, m_values, priors, methods);
  with_output(o.out_path, [&](std::ostream& out) { write_sweep_csv(out, rows); });
  return kExitOk;
}

int cmd_stats(const Options& o) {
  const AlleleDatabase db = load_database(o.db_path);
  const std::vector<CaseInput> cases = load_cases(o.case_path);
  with_output(o.out_path, [&](std::ostream& out) {
    for (const CaseInput& c : cases) {
      const AugmentedDatabase adb = augment(db, c.suspect, c.victim);
      out << "locus=" << c.locus << " victim=" << to_label(c.victim)
          << " suspect=" << to_label(c.suspect)
          << " observed=" << to_label(c.observation) << "\n";
      out << "n=" << adb.n << " total=" << adb.total() << "\n";
      for (const DipClass side : {DipClass::L, DipClass::S}) {
        const SideStats& stats = adb.side(side);
        const char tag = dip_char(side);
        out << "n_" << tag << "=" << stats.n_side << " k_b_" << tag << "="
            << stats.k_b << " n1_" << tag << "=" << stats.n1;
        if (stats.k_b >= 1)
          out << " k_hat_" << tag << "="
              << empirical_k_hat(stats, o.alpha, o.m);
        out << "\n";
        out << "counts_" << tag << ":";
        for (const auto& [allele, count] : stats.counts)
          out << " " << to_label(allele) << "=" << count;
        out << "\n";
      }
    }
  });
  return kExitOk;
}

struct ValidateRow {
  std::string quantity;
  double closed = 0.0;
  double estimate = 0.0;
  double se = 0.0;
  double ess = 0.0;
  std::string verdict;
};

ValidateRow check_estimate(const std::string& quantity, double closed,
                           const OracleEstimate& est) {
  ValidateRow row{quantity, closed, est.value, est.std_error, est.ess, ""};
  row.verdict =
      std::abs(closed - est.value) <= 3.0 * est.std_error ? "PASS" : "FAIL";
  return row;
}

ValidateRow check_exact(const std::string& quantity, double max_abs_diff) {
  ValidateRow row{quantity, 0.0, max_abs_diff, 0.0, 0.0, ""};
  row.verdict = max_abs_diff <= 1e-10 ? "PASS" : "FAIL";
  return row;
}

ValidateRow starved_row(const std::string& quantity, double closed) {
  return ValidateRow{quantity, closed, std::nan(""), 0.0, 0.0, "STARVED"};
}

int cmd_validate(const Options& o) {
  std::vector<ValidateRow> rows;
  const auto mk = [](const char* l) { return parse_allele(l); };
  const AlleleDatabase empty_db{{}, "builtin"};
  const PriorConfig tiny{3, 1.0, KPrior::uniform()};

  // trace with two alleles, empty reference database
  const CaseInput two_case{"builtin", Genotype::of(mk("L1"), mk("L1")),
                           Genotype::of(mk("S1"), mk("S2")),
                           Observation::two(mk("S1"), mk("S2"))};
  const AugmentedDatabase adb_two =
      augment(empty_db, two_case.suspect, two_case.victim);
  // trace with one allele (DIP-heterozygous minor)
  const CaseInput one_case{"builtin", Genotype::of(mk("L1"), mk("L1")),
                           Genotype::of(mk("S1"), mk("L1")),
                           Observation::one(mk("S1"))};
  const AugmentedDatabase adb_one =
      augment(empty_db, one_case.suspect, one_case.victim);
  // empty trace; conditioning counts hold both classes
  const CaseInput none_case{"builtin", Genotype::of(mk("L1"), mk("L1")),
                            Genotype::of(mk("L1"), mk("L1")),
                            Observation::none()};

  const auto add_is_row = [&](const std::string& name, const CaseInput& c,
                              const AugmentedDatabase& adb,
                              const PriorConfig& prior) {
    const double closed = denominator_full_bayes(c, adb, prior);
    try {
      rows.push_back(check_estimate(
          name, closed, is_denominator(c, adb, prior, o.samples, o.seed)));
    } catch (const OracleStarved&) {
      rows.push_back(starved_row(name, closed));
    }
  };

  add_is_row("two_allele_denominator", two_case, adb_two, tiny);
  add_is_row("one_allele_denominator", one_case, adb_one, tiny);
  add_is_row("no_allele_denominator", none_case, adb_two, tiny);
  add_is_row("two_allele_denominator_fixed_k", two_case, adb_two,
             PriorConfig{3, 1.0, KPrior::degenerate(2)});

  {  // sampler marginals: mean of psi under Beta(1,1), mass of k = 2
    double sum = 0.0, sumsq = 0.0, hits = 0.0;
    const long n = o.samples;
    for (long s = 0; s < n; ++s) {
      const GenerativeSample draw = sample_prior(tiny, o.seed, s);
      sum += draw.psi;
      sumsq += draw.psi * draw.psi;
      if (draw.k_l == 2) hits += 1.0;
    }
    const double mean = sum / double(n);
    const double var = (sumsq - sum * sum / double(n)) / double(n - 1);
    OracleEstimate psi_est{mean, std::sqrt(var / double(n)), n, double(n)};
    rows.push_back(check_estimate("psi_prior_mean", 0.5, psi_est));
    const double p = hits / double(n);
    OracleEstimate k_est{p, std::sqrt(p * (1.0 - p) / double(n)), n,
                         double(n)};
    rows.push_back(check_estimate("k_prior_mass_at_2", 1.0 / 3.0, k_est));
  }

  {  // closed-form k posterior against exhaustive support enumeration
    const auto max_diff = [](const SideStats& stats, const PriorConfig& pc) {
      const KPosterior post = k_posterior(stats, pc);
      const auto exact = exact_k_posterior_bruteforce(stats, pc);
      double worst = 0.0;
      for (const auto& [k, prob] : exact)
        worst = std::max(worst, std::abs(prob - post.prob(k)));
      return worst;
    };
    const auto side_of = [&](std::vector<long> counts) {
      SideStats stats;
      long id = 0;
      for (const long c : counts) {
        stats.counts[DipStrAllele{DipClass::S, std::to_string(++id)}] = c;
        stats.n_side += c;
        if (c == 1) ++stats.n1;
      }
      stats.k_b = long(stats.counts.size());
      return stats;
    };
    rows.push_back(check_exact(
        "k_posterior_vs_enumeration_uniform",
        max_diff(side_of({2, 1}), PriorConfig{5, 1.0, KPrior::uniform()})));
    rows.push_back(check_exact(
        "k_posterior_vs_enumeration_poisson",
        max_diff(side_of({1, 1, 1}),
                 PriorConfig{6, 0.5, KPrior::poisson(2.0)})));
    rows.push_back(check_exact(
        "k_posterior_vs_enumeration_negbin",
        max_diff(side_of({3, 2, 1}),
                 PriorConfig{4, 2.0, KPrior::neg_binomial(2.0, 0.5)})));
  }

  if (!o.db_path.empty() || !o.case_path.empty()) {
    if (o.db_path.empty() || o.case_path.empty())
      throw ParseError("validate needs both --db and --case (or neither)");
    const AlleleDatabase db = load_database(o.db_path);
    const PriorConfig prior{o.m, o.alpha, parse_k_prior(o.k_prior)};
    for (const CaseInput& c : load_cases(o.case_path)) {
      const AugmentedDatabase adb = augment(db, c.suspect, c.victim);
      if (adb.total() > 40 || prior.m > 16)
        throw ParseError(
            "case " + c.locus + " is too large for importance sampling "
            "(augmented size " + std::to_string(adb.total()) + " > 40 or m " +
            std::to_string(prior.m) + " > 16)");
      add_is_row("user_case_" + c.locus, c, adb, prior);
    }
  }

  bool all_pass = true;
  with_output(o.out_path, [&](std::ostream& out) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-38s %-16s %-16s %-12s %-12s %s",
                  "quantity", "closed_form", "estimate", "std_err", "ess",
                  "verdict");
    out << buf << "\n";
    for (const auto& row : rows) {
      std::snprintf(buf, sizeof buf, "%-38s %-16.9e %-16.9e %-12.3e %-12.1f %s",
                    row.quantity.c_str(), row.closed, row.estimate, row.se,
                    row.ess, row.verdict.c_str());
      out << buf << "\n";
      if (row.verdict != "PASS") all_pass = false;
    }
    long passed = 0;
    for (const auto& row : rows)
      if (row.verdict == "PASS") ++passed;
    out << "validate: " << passed << "/" << rows.size()
        << " quantities within tolerance\n";
  });
  return all_pass ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "dipstr-lr: likelihood ratios for DIP-STR profiles from unbalanced "
      "two-person DNA mixtures, with full support for alleles missing from "
      "the reference database"};
  app.require_subcommand(1);
  Options o;

  const auto add_model_flags = [&](CLI::App* cmd) {
    cmd->add_option("--alpha", o.alpha, "Dirichlet hyperparameter")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--m", o.m, "max allele types per DIP class")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  };
  const auto add_io_flags = [&](CLI::App* cmd, bool required) {
    auto* db = cmd->add_option("--db", o.db_path,
                               "reference database, one allele label per line");
    auto* cs = cmd->add_option("--case", o.case_path, "case file (JSON)");
    if (required) {
      db->required();
      cs->required();
    }
    cmd->add_option("--out", o.out_path, "write output here instead of stdout");
  };

  CLI::App* lr = app.add_subcommand("lr", "likelihood ratio for a case");
  add_io_flags(lr, true);
  add_model_flags(lr);
  lr->add_option("--method", o.methods, "comma-separated: full,plugin,gt")
      ->capture_default_str();
  lr->add_option("--k-prior", o.k_prior,
                 "uniform | poisson:<lambda> | negbin:<r>,<p> | fixed:<k0>")
      ->capture_default_str();

  CLI::App* sweep =
      app.add_subcommand("sweep", "sensitivity sweep over alpha, m, prior");
  add_io_flags(sweep, true);
  sweep->add_option("--alpha-grid", o.alpha_grid, "start:stop:step")
      ->required();
  sweep->add_option("--m-grid", o.m_grid, "comma-separated m values")
      ->capture_default_str();
  o.k_priors = {"uniform"};
  sweep->add_option("--k-prior", o.k_priors,
                    "k prior spec; repeat the flag to sweep several")
      ->capture_default_str();
  sweep->add_option("--method", o.sweep_methods, "comma-separated: full,plugin,gt")
      ->capture_default_str();

  CLI::App* validate = app.add_subcommand(
      "validate",
      "cross-check closed forms against the Monte Carlo oracle");
  add_io_flags(validate, false);
  add_model_flags(validate);
  validate->add_option("--k-prior", o.k_prior, "k prior for the user case")
      ->capture_default_str();
  validate->add_option("--seed", o.seed, "oracle seed")->capture_default_str();
  validate->add_option("--samples", o.samples, "oracle sample count")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  CLI::App* stats =
      app.add_subcommand("stats", "augmented-database summary for a case");
  add_io_flags(stats, true);
  add_model_flags(stats);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (lr->parsed()) return cmd_lr(o);
    if (sweep->parsed()) return cmd_sweep(o);
    if (validate->parsed()) return cmd_validate(o);
    if (stats->parsed()) return cmd_stats(o);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const OracleStarved& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ModelError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitModel;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitModel;
  }
  return kExitOk;
}
