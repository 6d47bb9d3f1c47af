#include "dipstr/cases.hpp"

#include <vector>

namespace dipstr {

Observation observe(const Genotype& victim, const Genotype& minor) {
  if (!victim.dip_homozygous()) return Observation::none();
  const DipClass target = opposite(victim.a1.dip);
  std::vector<DipStrAllele> seen;
  for (const auto& a : {minor.a1, minor.a2})
    if (a.dip == target && (seen.empty() || seen.front() != a))
      seen.push_back(a);
  return Observation::from_alleles(std::move(seen));
}

CaseKind classify_case(const CaseInput& c) {
  if (!c.victim.dip_homozygous())
    return CaseKind{CaseTag::VictimHeterozygous, DipClass::L, {}, {}};
  const DipClass side = opposite(c.victim.a1.dip);
  const Observation& obs = c.observation;
  if (observe(c.victim, c.suspect) != obs)
    return CaseKind{CaseTag::Exclusion, side, obs.o1(), obs.o2()};
  switch (obs.count()) {
    case 2:
      return CaseKind{CaseTag::TwoAlleles, side, obs.o1(), obs.o2()};
    case 1:
      return CaseKind{CaseTag::OneAllele, side, obs.o1(), {}};
    default:
      return CaseKind{CaseTag::NoAllele, side, {}, {}};
  }
}

void validate_case(const CaseInput& c) {
  const Observation& obs = c.observation;
  if (!obs.o1()) return;
  if (!c.victim.dip_homozygous())
    throw ParseError("locus " + c.locus +
                     ": a DIP-heterozygous victim masks the minor "
                     "contributor, so observed trace alleles are impossible");
  if (obs.o1()->dip == c.victim.a1.dip)
    throw ParseError("locus " + c.locus +
                     ": observed alleles must be of the DIP class opposite "
                     "the victim's (victim " + to_label(c.victim) +
                     ", observed " + to_label(obs) + ")");
}

}  // namespace dipstr
