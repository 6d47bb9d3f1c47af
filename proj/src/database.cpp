#include "dipstr/database.hpp"

namespace dipstr {

long SideStats::count_of(const DipStrAllele& a) const {
  auto it = counts.find(a);
  return it == counts.end() ? 0 : it->second;
}

namespace {

void tally(SideStats& side, const DipStrAllele& a) {
  ++side.counts[a];
  ++side.n_side;
}

void finalize(SideStats& side) {
  side.k_b = long(side.counts.size());
  side.n1 = 0;
  for (const auto& [allele, count] : side.counts)
    if (count == 1) ++side.n1;
}

}  // namespace

AugmentedDatabase augment(const AlleleDatabase& base, const Genotype& suspect,
                          const Genotype& victim) {
  AugmentedDatabase adb;
  adb.suspect = suspect;
  adb.victim = victim;
  adb.n = long(base.entries.size());
  auto side_of = [&adb](DipClass c) -> SideStats& {
    return c == DipClass::L ? adb.l : adb.s;
  };
  for (const auto& a : base.entries) tally(side_of(a.dip), a);
  for (const auto& a : {suspect.a1, suspect.a2, victim.a1, victim.a2})
    tally(side_of(a.dip), a);
  finalize(adb.l);
  finalize(adb.s);
  return adb;
}

}  // namespace dipstr
