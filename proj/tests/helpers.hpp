#pragma once

#ifdef DIPSTR_CLI_PATH
#include <sys/wait.h>

#include <cstdio>
#endif

#include <map>
#include <string>
#include <vector>

#include "dipstr/cases.hpp"
#include "dipstr/database.hpp"
#include "dipstr/rng.hpp"
#include "dipstr/types.hpp"

namespace testutil {

inline dipstr::DipStrAllele mk(const std::string& label) {
  return dipstr::parse_allele(label);
}

inline dipstr::Genotype geno(const std::string& a, const std::string& b) {
  return dipstr::Genotype::of(mk(a), mk(b));
}

// Side statistics from a bare count vector; alleles get labels c1, c2, ...
inline dipstr::SideStats side_of(dipstr::DipClass cls,
                                 const std::vector<long>& counts) {
  dipstr::SideStats stats;
  long id = 0;
  for (const long c : counts) {
    stats.counts[dipstr::DipStrAllele{cls, std::to_string(++id)}] = c;
    stats.n_side += c;
    if (c == 1) ++stats.n1;
  }
  stats.k_b = long(stats.counts.size());
  return stats;
}

inline long pick(dipstr::CounterRng& rng, long n) {
  return long(rng.next_unit() * double(n));
}

// Random allele over STR ids {1..id_span}, either class.
inline dipstr::DipStrAllele random_allele(dipstr::CounterRng& rng,
                                          long id_span) {
  const dipstr::DipClass cls =
      pick(rng, 2) == 0 ? dipstr::DipClass::L : dipstr::DipClass::S;
  return dipstr::DipStrAllele{cls, std::to_string(1 + pick(rng, id_span))};
}

inline dipstr::DipStrAllele random_allele_of(dipstr::CounterRng& rng,
                                             dipstr::DipClass cls,
                                             long id_span) {
  return dipstr::DipStrAllele{cls, std::to_string(1 + pick(rng, id_span))};
}

// A case whose observation is exactly what the suspect would leave, plus a
// random reference database. Victim is DIP-homozygous.
struct RandomCase {
  dipstr::CaseInput input;
  dipstr::AlleleDatabase db;
};

inline RandomCase random_consistent_case(dipstr::CounterRng& rng,
                                         long id_span = 4,
                                         long max_db = 10) {
  RandomCase rc;
  const dipstr::DipClass victim_class =
      pick(rng, 2) == 0 ? dipstr::DipClass::L : dipstr::DipClass::S;
  const auto v = random_allele_of(rng, victim_class, id_span);
  rc.input.locus = "random";
  rc.input.victim = dipstr::Genotype::of(v, v);
  rc.input.suspect =
      dipstr::Genotype::of(random_allele(rng, id_span), random_allele(rng, id_span));
  rc.input.observation = dipstr::observe(rc.input.victim, rc.input.suspect);
  const long db_size = pick(rng, max_db + 1);
  for (long i = 0; i < db_size; ++i)
    rc.db.entries.push_back(random_allele(rng, id_span));
  rc.db.source = "random";
  return rc;
}

// Swap every allele's DIP class.
inline dipstr::DipStrAllele mirror(const dipstr::DipStrAllele& a) {
  return dipstr::DipStrAllele{dipstr::opposite(a.dip), a.str_id};
}

inline dipstr::Genotype mirror(const dipstr::Genotype& g) {
  return dipstr::Genotype::of(mirror(g.a1), mirror(g.a2));
}

inline dipstr::Observation mirror(const dipstr::Observation& o) {
  std::vector<dipstr::DipStrAllele> alleles;
  if (o.o1()) alleles.push_back(mirror(*o.o1()));
  if (o.o2()) alleles.push_back(mirror(*o.o2()));
  return dipstr::Observation::from_alleles(alleles);
}

inline RandomCase mirror(const RandomCase& rc) {
  RandomCase out;
  out.input.locus = rc.input.locus;
  out.input.victim = mirror(rc.input.victim);
  out.input.suspect = mirror(rc.input.suspect);
  out.input.observation = mirror(rc.input.observation);
  for (const auto& a : rc.db.entries) out.db.entries.push_back(mirror(a));
  out.db.source = rc.db.source;
  return out;
}

// Rename STR ids through a map (must cover every id that occurs).
using Renaming = std::map<std::string, std::string>;

inline dipstr::DipStrAllele rename(const dipstr::DipStrAllele& a,
                                   const Renaming& map) {
  return dipstr::DipStrAllele{a.dip, map.at(a.str_id)};
}

inline dipstr::Genotype rename(const dipstr::Genotype& g, const Renaming& map) {
  return dipstr::Genotype::of(rename(g.a1, map), rename(g.a2, map));
}

inline dipstr::Observation rename(const dipstr::Observation& o,
                                  const Renaming& map) {
  std::vector<dipstr::DipStrAllele> alleles;
  if (o.o1()) alleles.push_back(rename(*o.o1(), map));
  if (o.o2()) alleles.push_back(rename(*o.o2(), map));
  return dipstr::Observation::from_alleles(alleles);
}

inline RandomCase rename(const RandomCase& rc, const Renaming& map) {
  RandomCase out;
  out.input.locus = rc.input.locus;
  out.input.victim = rename(rc.input.victim, map);
  out.input.suspect = rename(rc.input.suspect, map);
  out.input.observation = rename(rc.input.observation, map);
  for (const auto& a : rc.db.entries) out.db.entries.push_back(rename(a, map));
  out.db.source = rc.db.source;
  return out;
}

inline std::string data_path(const std::string& name) {
  return std::string(DIPSTR_DATA_DIR) + "/" + name;
}

#ifdef DIPSTR_CLI_PATH
struct CliResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

inline CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(DIPSTR_CLI_PATH) + " " + args + " 2>&1";
  CliResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return result;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0)
    result.output.append(buf, got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}
#endif

}  // namespace testutil
