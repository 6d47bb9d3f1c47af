#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "dipstr/cases.hpp"
#include "dipstr/lr.hpp"
#include "dipstr/prior.hpp"
#include "dipstr/types.hpp"

namespace dipstr {

// One allele label per line; '#' starts a comment; blank lines ignored.
AlleleDatabase load_database(const std::filesystem::path& path);
AlleleDatabase parse_database(std::istream& in, const std::string& source);
std::string format_database(const AlleleDatabase& db);

// JSON case file: an object {locus, victim, suspect, observed} or an array
// of such objects (one entry per locus).
std::vector<CaseInput> load_cases(const std::filesystem::path& path);
std::vector<CaseInput> parse_cases(const std::string& text,
                                   const std::string& source);

// "uniform" | "poisson:<lambda>" | "negbin:<r>,<p>" | "fixed:<k0>"
KPrior parse_k_prior(const std::string& spec);

std::vector<double> parse_alpha_grid(const std::string& spec);  // start:stop:step
std::vector<long> parse_m_grid(const std::string& spec);        // v1,v2,...
std::vector<Method> parse_methods(const std::string& spec);     // full,plugin,gt

// Header `method,alpha,m,k_prior,log10_lr,status`; numbers at full
// precision; fields quoted only when they contain CSV metacharacters.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

std::string fmt_full(double x);   // round-trip precision
std::string fmt_param(double x);  // 12 significant digits, for input parameters
std::string fmt_short(double x);  // 6 significant digits

}  // namespace dipstr
