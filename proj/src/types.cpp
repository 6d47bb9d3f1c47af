#include "dipstr/types.hpp"

#include <algorithm>
#include <utility>

namespace dipstr {

DipClass opposite(DipClass c) {
  return c == DipClass::L ? DipClass::S : DipClass::L;
}

char dip_char(DipClass c) { return c == DipClass::L ? 'L' : 'S'; }

DipStrAllele parse_allele(const std::string& label) {
  const bool has_space =
      label.find_first_of(" \t\r\n") != std::string::npos;
  if (label.size() < 2 || has_space || (label[0] != 'L' && label[0] != 'S'))
    throw ParseError("bad allele label \"" + label +
                     "\": expected L or S followed by an STR identifier");
  return DipStrAllele{label[0] == 'L' ? DipClass::L : DipClass::S,
                      label.substr(1)};
}

std::string to_label(const DipStrAllele& a) {
  return dip_char(a.dip) + a.str_id;
}

Genotype Genotype::of(DipStrAllele x, DipStrAllele y) {
  if (y < x) std::swap(x, y);
  return Genotype{std::move(x), std::move(y)};
}

std::string to_label(const Genotype& g) {
  return to_label(g.a1) + "-" + to_label(g.a2);
}

Observation Observation::none() { return {}; }

Observation Observation::one(DipStrAllele a) {
  Observation o;
  o.o1_ = std::move(a);
  return o;
}

Observation Observation::two(DipStrAllele a, DipStrAllele b) {
  return from_alleles({std::move(a), std::move(b)});
}

Observation Observation::from_alleles(std::vector<DipStrAllele> alleles) {
  if (alleles.size() > 2)
    throw ParseError("a trace lists at most two alleles, got " +
                     std::to_string(alleles.size()));
  std::sort(alleles.begin(), alleles.end());
  Observation o;
  if (alleles.size() == 2) {
    if (alleles[0] == alleles[1])
      throw ParseError("duplicate observed allele " + to_label(alleles[0]));
    if (alleles[0].dip != alleles[1].dip)
      throw ParseError("observed alleles must share one DIP class, got " +
                       to_label(alleles[0]) + " and " + to_label(alleles[1]));
    o.o2_ = std::move(alleles[1]);
  }
  if (!alleles.empty()) o.o1_ = std::move(alleles[0]);
  return o;
}

std::string to_label(const Observation& o) {
  if (!o.o1()) return "none";
  std::string s = to_label(*o.o1());
  if (o.o2()) s += "," + to_label(*o.o2());
  return s;
}

}  // namespace dipstr
