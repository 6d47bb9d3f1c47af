#pragma once

#include "dipstr/types.hpp"

namespace dipstr {

// One locus to evaluate: the two profiles and what the trace showed.
struct CaseInput {
  std::string locus;
  Genotype victim;
  Genotype suspect;
  Observation observation;
};

// Alleles of the minor contributor visible next to the given major
// contributor. A DIP-heterozygous major masks everything; a homozygous
// major reveals the minor's alleles of the opposite DIP class, deduplicated.
Observation observe(const Genotype& victim, const Genotype& minor);

enum class CaseTag {
  TwoAlleles,
  OneAllele,
  NoAllele,
  VictimHeterozygous,
  Exclusion,
};

struct CaseKind {
  CaseTag tag = CaseTag::NoAllele;
  // DIP class any trace allele must have (opposite of the victim's class);
  // meaningless when the victim is heterozygous.
  DipClass side = DipClass::L;
  std::optional<DipStrAllele> first, second;  // observed alleles, sorted
};

// Sorts a case into the denominator form it needs, or flags it as
// uninformative (heterozygous victim) or as an exclusion (the suspect would
// have produced a different trace, so the prosecution hypothesis is out).
CaseKind classify_case(const CaseInput& c);

// Cross-field rules a case must satisfy before any computation; throws
// ParseError. Construction of Genotype/Observation covers the rest.
void validate_case(const CaseInput& c);

}  // namespace dipstr
