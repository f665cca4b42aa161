#pragma once

#include <string>

#include "charvar/count.hpp"
#include "charvar/polynomial.hpp"
#include "config.hpp"

namespace charvar::testing {

inline std::string config_path(const std::string& name) { return std::string(CHARVAR_CONFIG_DIR) + "/" + name + ".json"; }

inline cli::Config load(const std::string& name) { return cli::load_config(config_path(name)); }

inline Polynomial Q() { return Polynomial::q(); }
inline Polynomial qpow(long e) { return Polynomial::monomial(Rational(1), static_cast<std::size_t>(e)); }
// (q + shift)^e
inline Polynomial shifted(long shift, long e) { return Polynomial::binomial_power(shift, static_cast<unsigned>(e)); }

inline Polynomial count_of(const cli::Config& c, int g, int n, int m) {
  ProblemSpec s = c.spec;
  s.g = g;
  s.n = n;
  s.m = m;
  return count_polynomial(s).polynomial;
}

}  // namespace charvar::testing
