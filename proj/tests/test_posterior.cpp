#include <doctest.h>

#include <cmath>
#include <vector>

#include "dipstr/posterior.hpp"
#include "dipstr/rng.hpp"
#include "helpers.hpp"

using namespace dipstr;
using testutil::mk;
using testutil::side_of;

namespace {

// Direct long-double evaluation of the k posterior, no log space:
// w(k) = C(k,k_b) p(k) / prod_{j<n}(k a + j); returns normalized probs.
std::vector<long double> direct_k_posterior(long k_b, long n_side, long m,
                                            long double alpha,
                                            const KPrior& prior) {
  ArrayXd lp = prior.log_pmf(m);
  std::vector<long double> w(m + 1, 0.0L);
  long double total = 0.0L;
  for (long k = k_b; k <= m; ++k) {
    long double choose = 1.0L;
    for (long j = 0; j < k_b; ++j)
      choose = choose * (long double)(k - j) / (long double)(j + 1);
    long double ratio = 1.0L;  // Gamma(ka) / Gamma(n + ka)
    for (long j = 0; j < n_side; ++j) ratio /= (long double)k * alpha + j;
    w[k] = choose * (long double)std::exp(lp[k - 1]) * ratio;
    total += w[k];
  }
  for (auto& x : w) x /= total;
  return w;
}

}  // namespace

TEST_CASE("k_posterior worked example") {
  // two singleton alleles, m one larger than observed, flat prior
  const SideStats stats = side_of(DipClass::S, {1, 1});
  const PriorConfig prior{3, 1.0, KPrior::uniform()};
  const KPosterior post = k_posterior(stats, prior);
  CHECK(post.k_min == 2);
  CHECK(post.prob(2) == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(post.prob(3) == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(post.prob(1) == 0.0);
  CHECK(post.prob(4) == 0.0);
}

TEST_CASE("k_posterior degenerate forms") {
  const SideStats stats = side_of(DipClass::L, {2, 1, 1});
  SUBCASE("m equal to k_b leaves a single atom") {
    const KPosterior post = k_posterior(stats, PriorConfig{3, 1.0, KPrior::uniform()});
    CHECK(post.prob(3) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("degenerate prior at k_b") {
    const KPosterior post =
        k_posterior(stats, PriorConfig{10, 1.0, KPrior::degenerate(3)});
    CHECK(post.prob(3) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(post.prob(4) == 0.0);
  }
}

TEST_CASE("k_posterior rejects impossible configurations") {
  const SideStats stats = side_of(DipClass::L, {1, 1, 1, 1});
  CHECK_THROWS_WITH_AS(
      k_posterior(stats, PriorConfig{3, 1.0, KPrior::uniform()}),
      doctest::Contains("more distinct alleles"), ModelError);
  CHECK_THROWS_WITH_AS(
      k_posterior(stats, PriorConfig{10, 1.0, KPrior::degenerate(2)}),
      doctest::Contains("more distinct alleles"), ModelError);
  CHECK_THROWS_AS(k_posterior(SideStats{}, PriorConfig{3, 1.0, KPrior::uniform()}),
                  ModelError);
}

TEST_CASE("k_posterior normalizes and matches direct high-precision evaluation") {
  const std::vector<KPrior> priors = {KPrior::uniform(), KPrior::poisson(2.0),
                                      KPrior::neg_binomial(2.0, 0.5)};
  const std::vector<std::vector<long>> count_sets = {
      {1}, {2}, {1, 1}, {3, 2}, {2, 2, 1}, {1, 1, 1, 1}, {4, 1, 1}};
  for (const double alpha : {0.5, 1.0, 2.0}) {
    for (const auto& counts : count_sets) {
      const SideStats stats = side_of(DipClass::S, counts);
      for (long m = stats.k_b; m <= 6; ++m) {
        for (const auto& kp : priors) {
          const PriorConfig prior{m, alpha, kp};
          const KPosterior post = k_posterior(stats, prior);
          double mass = 0.0;
          for (long k = post.k_min; k <= m; ++k) mass += post.prob(k);
          CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
          const auto direct =
              direct_k_posterior(stats.k_b, stats.n_side, m, alpha, kp);
          for (long k = stats.k_b; k <= m; ++k)
            CHECK(post.prob(k) ==
                  doctest::Approx(double(direct[k])).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("psi_moments") {
  SUBCASE("smallest augmented database") {
    const PsiMoments psi = psi_moments(2, 2);
    CHECK(psi.e_psi == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(psi.e_psi_sq == doctest::Approx(2.0 / 7.0).epsilon(1e-15));
    CHECK(psi.e_one_minus_psi_sq == doctest::Approx(2.0 / 7.0).epsilon(1e-15));
    CHECK(psi.e_psi_one_minus_psi == doctest::Approx(3.0 / 14.0).epsilon(1e-15));
  }
  SUBCASE("survey-scale counts") {
    const PsiMoments psi = psi_moments(81, 129);
    CHECK(psi.e_psi_sq ==
          doctest::Approx(82.0 * 83.0 / (212.0 * 213.0)).epsilon(1e-15));
  }
  SUBCASE("second-moment identity over random counts") {
    CounterRng rng(51, 0);
    for (int i = 0; i < 1000; ++i) {
      const long n_l = testutil::pick(rng, 200);
      const long n_s = std::max(0L, 4 - n_l) + testutil::pick(rng, 200);
      const PsiMoments psi = psi_moments(n_l, n_s);
      const double total =
          psi.e_psi_sq + 2.0 * psi.e_psi_one_minus_psi + psi.e_one_minus_psi_sq;
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("phi_moments single-Dirichlet case") {
  // m = k_b collapses the mixture: mean is (a + n_i) / (k_b a + n)
  const SideStats stats = side_of(DipClass::S, {2, 1});
  const PriorConfig prior{2, 1.0, KPrior::uniform()};
  const KPosterior post = k_posterior(stats, prior);
  const auto phi = phi_moments(stats, post, 1.0, mk("S1"));
  CHECK(phi.e_phi_i == doctest::Approx(3.0 / 5.0).epsilon(1e-12));
}

TEST_CASE("phi_moments mixture example") {
  const SideStats stats = side_of(DipClass::S, {1, 1});
  const PriorConfig prior{3, 1.0, KPrior::uniform()};
  const KPosterior post = k_posterior(stats, prior);
  const auto phi = phi_moments(stats, post, 1.0, mk("S1"), mk("S2"));
  CHECK(phi.e_phi_i_phi_j == doctest::Approx(0.16).epsilon(1e-12));
  // symmetric in the pair
  const auto swapped = phi_moments(stats, post, 1.0, mk("S2"), mk("S1"));
  CHECK(phi.e_phi_i_phi_j == swapped.e_phi_i_phi_j);
}

TEST_CASE("phi_moments rejects unobserved or repeated alleles") {
  const SideStats stats = side_of(DipClass::S, {2, 1});
  const KPosterior post =
      k_posterior(stats, PriorConfig{4, 1.0, KPrior::uniform()});
  CHECK_THROWS_AS(phi_moments(stats, post, 1.0, mk("S9")), ModelError);
  CHECK_THROWS_AS(phi_moments(stats, post, 1.0, mk("S1"), mk("S9")), ModelError);
  CHECK_THROWS_AS(phi_moments(stats, post, 1.0, mk("S1"), mk("S1")), ModelError);
}

TEST_CASE("mixture collapse: fixed k reproduces plain Dirichlet moments") {
  CounterRng rng(61, 0);
  for (int i = 0; i < 50; ++i) {
    std::vector<long> counts;
    const long k_b = 1 + testutil::pick(rng, 4);
    for (long j = 0; j < k_b; ++j) counts.push_back(1 + testutil::pick(rng, 5));
    const SideStats stats = side_of(DipClass::L, counts);
    const double alpha = 0.5 + rng.next_unit() * 2.0;
    for (const bool via_m : {true, false}) {
      const PriorConfig prior{via_m ? stats.k_b : stats.k_b + 5, alpha,
                              via_m ? KPrior::uniform()
                                    : KPrior::degenerate(stats.k_b)};
      const KPosterior post = k_posterior(stats, prior);
      const double denom = double(stats.k_b) * alpha + double(stats.n_side);
      const auto i_allele = stats.counts.begin()->first;
      const auto phi = phi_moments(stats, post, alpha, i_allele);
      const double a_i = alpha + double(stats.counts.begin()->second);
      CHECK(phi.e_phi_i == doctest::Approx(a_i / denom).epsilon(1e-12));
      CHECK(phi.e_phi_i_sq ==
            doctest::Approx(a_i * (a_i + 1.0) / (denom * (denom + 1.0)))
                .epsilon(1e-12));
      if (stats.k_b > 1) {
        const auto j_allele = std::next(stats.counts.begin())->first;
        const double a_j =
            alpha + double(std::next(stats.counts.begin())->second);
        const auto both = phi_moments(stats, post, alpha, i_allele, j_allele);
        CHECK(both.e_phi_i_phi_j ==
              doctest::Approx(a_i * a_j / (denom * (denom + 1.0)))
                  .epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("phi moment ordering") {
  CounterRng rng(71, 0);
  for (int i = 0; i < 100; ++i) {
    const long k_b = 2 + testutil::pick(rng, 3);
    std::vector<long> counts;
    for (long j = 0; j < k_b; ++j) counts.push_back(1 + testutil::pick(rng, 4));
    const SideStats stats = side_of(DipClass::S, counts);
    const double alpha = 0.25 + rng.next_unit() * 3.0;
    const long m = stats.k_b + testutil::pick(rng, 6);
    const KPosterior post = k_posterior(stats, PriorConfig{m, alpha, KPrior::uniform()});
    const auto i_allele = stats.counts.begin()->first;
    const auto j_allele = std::next(stats.counts.begin())->first;
    const auto mi = phi_moments(stats, post, alpha, i_allele, j_allele);
    const auto mj = phi_moments(stats, post, alpha, j_allele, i_allele);
    CHECK(mi.e_phi_i_phi_j > 0.0);
    CHECK(mi.e_phi_i_phi_j < std::min(mi.e_phi_i, mj.e_phi_i));
    CHECK(mi.e_phi_i_sq <= mi.e_phi_i);
  }
}

TEST_CASE("theta_moments compose phi and mass moments") {
  // empty reference database, two singleton S alleles, victim L-homozygous
  const AugmentedDatabase adb = augment(
      AlleleDatabase{}, testutil::geno("S1", "S2"), testutil::geno("L1", "L1"));
  const PriorConfig prior{3, 1.0, KPrior::uniform()};
  const auto th = theta_moments(DipClass::S, adb, prior, mk("S1"), mk("S2"));
  CHECK(th.e_theta_i_theta_j ==
        doctest::Approx(8.0 / 175.0).epsilon(1e-12));  // 0.16 * 2/7

  // the composition factors exactly
  const KPosterior post = k_posterior(adb.s, prior);
  const auto phi = phi_moments(adb.s, post, 1.0, mk("S1"), mk("S2"));
  const PsiMoments psi = psi_moments(adb.l.n_side, adb.s.n_side);
  CHECK(th.e_theta_i_theta_j ==
        doctest::Approx(phi.e_phi_i_phi_j * psi.e_one_minus_psi_sq)
            .epsilon(1e-14));
  CHECK(th.e_theta_i_sq ==
        doctest::Approx(phi.e_phi_i_sq * psi.e_one_minus_psi_sq).epsilon(1e-14));
  CHECK(th.e_theta_i_times_othermass ==
        doctest::Approx(phi.e_phi_i * psi.e_psi_one_minus_psi).epsilon(1e-14));
}

TEST_CASE("theta_moments L side uses the L mass moment") {
  const AugmentedDatabase adb = augment(
      AlleleDatabase{}, testutil::geno("L1", "L2"), testutil::geno("S1", "S1"));
  const PriorConfig prior{4, 1.0, KPrior::uniform()};
  const auto th = theta_moments(DipClass::L, adb, prior, mk("L1"), mk("L2"));
  const KPosterior post = k_posterior(adb.l, prior);
  const auto phi = phi_moments(adb.l, post, 1.0, mk("L1"), mk("L2"));
  const PsiMoments psi = psi_moments(adb.l.n_side, adb.s.n_side);
  CHECK(th.e_theta_i_theta_j ==
        doctest::Approx(phi.e_phi_i_phi_j * psi.e_psi_sq).epsilon(1e-14));
}
