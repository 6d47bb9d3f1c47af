#pragma once

#include <map>

#include "dipstr/types.hpp"

namespace dipstr {

// Sufficient statistics of one DIP class in the augmented database.
struct SideStats {
  long n_side = 0;                      // total alleles of this class
  std::map<DipStrAllele, long> counts;  // per-allele counts, canonical order
  long k_b = 0;                         // distinct alleles
  long n1 = 0;                          // alleles seen exactly once

  long count_of(const DipStrAllele& a) const;
};

// Reference database plus the four suspect/victim alleles, reduced to counts.
struct AugmentedDatabase {
  Genotype suspect, victim;
  long n = 0;  // reference database size; augmented total is n + 4
  SideStats l, s;

  const SideStats& side(DipClass c) const { return c == DipClass::L ? l : s; }
  long total() const { return n + 4; }
};

AugmentedDatabase augment(const AlleleDatabase& base, const Genotype& suspect,
                          const Genotype& victim);

}  // namespace dipstr
