#pragma once

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dipstr {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed user input: files, labels, CLI values. CLI exit code 2.
struct ParseError : Error {
  using Error::Error;
};

// Well-formed input the model cannot handle (e.g. m < k_b). CLI exit code 3.
struct ModelError : Error {
  using Error::Error;
};

enum class DipClass : int { L = 0, S = 1 };

DipClass opposite(DipClass c);
char dip_char(DipClass c);

// One DIP-STR allele: DIP class (L or S) plus the STR variant label.
// Total order: L before S, then STR label lexicographically.
struct DipStrAllele {
  DipClass dip = DipClass::L;
  std::string str_id;

  auto operator<=>(const DipStrAllele&) const = default;
};

// "L2" -> (L, "2"). Throws ParseError naming the offending text.
DipStrAllele parse_allele(const std::string& label);
std::string to_label(const DipStrAllele& a);

// Unordered pair of alleles, stored sorted.
struct Genotype {
  DipStrAllele a1, a2;

  static Genotype of(DipStrAllele x, DipStrAllele y);
  bool dip_homozygous() const { return a1.dip == a2.dip; }
  bool operator==(const Genotype&) const = default;
};

std::string to_label(const Genotype& g);

// Alleles reported from the trace: zero, one, or two, kept sorted.
// When two are present they share one DIP class and are distinct.
class Observation {
 public:
  Observation() = default;
  static Observation none();
  static Observation one(DipStrAllele a);
  static Observation two(DipStrAllele a, DipStrAllele b);
  static Observation from_alleles(std::vector<DipStrAllele> alleles);

  const std::optional<DipStrAllele>& o1() const { return o1_; }
  const std::optional<DipStrAllele>& o2() const { return o2_; }
  int count() const { return int(o1_.has_value()) + int(o2_.has_value()); }
  bool operator==(const Observation&) const = default;

 private:
  std::optional<DipStrAllele> o1_, o2_;
};

std::string to_label(const Observation& o);

// Reference allele list; duplicates are counts, order irrelevant.
struct AlleleDatabase {
  std::vector<DipStrAllele> entries;
  std::string source;

  std::size_t size() const { return entries.size(); }
};

}  // namespace dipstr
