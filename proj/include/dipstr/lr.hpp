#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "dipstr/cases.hpp"
#include "dipstr/posterior.hpp"

namespace dipstr {

enum class Method {
  FullBayes = 0,
  ClassicalPlugin = 1,
  GoodTuringEmpirical = 2,
};

std::string method_label(Method m);  // "full", "plugin", "gt"

enum class LrStatus { Ok, Exclusion, Uninformative };

std::string status_label(LrStatus s);

struct LrResult {
  double denominator = 1.0;  // defence-hypothesis trace probability (Ok only)
  double lr = 1.0;
  double log10_lr = 0.0;
  Method method = Method::FullBayes;
  LrStatus status = LrStatus::Ok;
  std::map<std::string, double> diagnostics;
};

// Defence-hypothesis probability of the observed trace, integrating the
// frequency posterior: two alleles -> 2 E[theta_i theta_j | b]; one allele
// -> E[theta_i^2 | b] + 2 E[theta_i * victim-class mass | b]; none ->
// E[(victim-class mass)^2 | b].
double denominator_full_bayes(const CaseInput& c, const AugmentedDatabase& adb,
                              const PriorConfig& prior);

// Same expression evaluated at posterior-mean point estimates with the
// number of types fixed at k_b.
double denominator_plugin(const CaseInput& c, const AugmentedDatabase& adb,
                          const PriorConfig& prior);

// Number of allele types at which the model's expected unseen mass equals
// the singleton fraction of the database; rounded, clamped into [k_b, m].
long empirical_k_hat(const SideStats& stats, double alpha, long m);

LrResult compute_lr(const CaseInput& c, const AlleleDatabase& db,
                    const PriorConfig& prior, Method method);

// Product across independent loci: exclusions dominate, uninformative loci
// contribute a factor of one. All inputs must share one method.
LrResult combine_loci(const std::vector<LrResult>& results);

struct SweepRow {
  Method method = Method::FullBayes;
  double alpha = 1.0;
  long m = 100;
  std::string k_prior;
  double log10_lr = 0.0;  // NaN when status carries an error
  std::string status;     // "ok", "exclusion", "uninformative", "error:..."
};

// Cartesian product over (method, alpha, m, prior) in that loop order.
// Per-cell model errors land in the row status; the sweep continues.
std::vector<SweepRow> sensitivity_sweep(const CaseInput& c,
                                        const AlleleDatabase& db,
                                        std::span<const double> alphas,
                                        std::span<const long> m_values,
                                        std::span<const KPrior> priors,
                                        std::span<const Method> methods);

}  // namespace dipstr
