#include "charvar/charsum.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "charvar/error.hpp"

namespace charvar {

namespace {

class WordParser {
 public:
  WordParser(const std::vector<std::string>& symbols, std::string_view text) : sym_(symbols), s_(text) {}

  Word parse() {
    Word w = product();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return w;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorKind::Parse, "E_WORD",
                "cannot parse '" + std::string(s_) + "' at column " + std::to_string(pos_ + 1) + ": " + why);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  long long integer() {
    skip();
    bool neg = false;
    if (eat('-')) neg = true;
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer exponent");
    long long v = std::stoll(std::string(s_.substr(start, pos_ - start)));
    return neg ? -v : v;
  }
  Word atom() {
    skip();
    if (eat('(')) {
      Word w = product();
      if (!eat(')')) fail("expected ')'");
      return w;
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    std::string name(s_.substr(start, pos_ - start));
    if (name.empty()) fail("expected a symbol");
    if (name == "1") return Word(sym_.size(), 0);
    auto it = std::find(sym_.begin(), sym_.end(), name);
    if (it == sym_.end()) fail("unknown symbol '" + name + "'");
    Word w(sym_.size(), 0);
    w[static_cast<std::size_t>(it - sym_.begin())] = 1;
    return w;
  }
  Word factor() {
    Word w = atom();
    if (eat('^')) {
      bool paren = eat('(');
      long long e = integer();
      if (paren && !eat(')')) fail("expected ')'");
      w = scale_word(w, e);
    }
    return w;
  }
  Word product() {
    Word w = factor();
    for (;;) {
      if (eat('*')) {
        w = add_words(w, factor());
      } else if (eat('/')) {
        w = add_words(w, scale_word(factor(), -1));
      } else {
        return w;
      }
    }
  }

  const std::vector<std::string>& sym_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

std::vector<std::string> split_args(std::string_view inner) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : inner) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
      continue;
    }
    cur.push_back(c);
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  return out;
}

}  // namespace

EigenvalueDatum::EigenvalueDatum(std::vector<std::string> symbols, std::vector<Word> relations)
    : symbols_(std::move(symbols)), group_(symbols_.size(), std::move(relations)) {}

EigenvalueDatum EigenvalueDatum::parse(std::vector<std::string> symbols, const std::vector<std::string>& relations) {
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    const auto& s = symbols[i];
    if (s.empty() || s == "1" || !std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }) ||
        std::isdigit(static_cast<unsigned char>(s[0])))
      throw Error(ErrorKind::Parse, "E_SYMBOL", "invalid eigenvalue symbol '" + s + "'");
    if (std::count(symbols.begin(), symbols.end(), s) > 1)
      throw Error(ErrorKind::Parse, "E_SYMBOL", "duplicate eigenvalue symbol '" + s + "'");
  }
  EigenvalueDatum tmp(symbols, {});
  std::vector<Word> rels;
  for (const auto& r : relations) {
    auto eq = r.find('=');
    if (eq == std::string::npos) {
      rels.push_back(tmp.parse_word(r));
    } else {
      rels.push_back(add_words(tmp.parse_word(r.substr(0, eq)), scale_word(tmp.parse_word(r.substr(eq + 1)), -1)));
    }
  }
  return EigenvalueDatum(std::move(symbols), std::move(rels));
}

Word EigenvalueDatum::parse_word(std::string_view text) const { return WordParser(symbols_, text).parse(); }

std::string EigenvalueDatum::format_word(const Word& w) const {
  std::ostringstream o;
  bool first = true;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 0) continue;
    if (!first) o << "*";
    first = false;
    o << symbols_[i];
    if (w[i] != 1) o << "^" << w[i];
  }
  return first ? "1" : o.str();
}

std::vector<std::string> EigenvalueDatum::warnings() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    Word w = identity();
    w[i] = 1;
    if (group_.is_identity(w)) {
      out.push_back("relations force symbol '" + symbols_[i] + "' to be 1");
      continue;
    }
    for (long long k = 2; k <= 64; ++k)
      if (group_.is_identity(scale_word(w, k))) {
        out.push_back("relations force symbol '" + symbols_[i] + "' to have order " + std::to_string(k));
        break;
      }
  }
  return out;
}

SymbolicTorusElement SymbolicTorusElement::operator*(const SymbolicTorusElement& o) const {
  if (o.rank() != rank()) throw Error(ErrorKind::Validation, "E_DIMENSION", "torus element rank mismatch");
  std::vector<Word> c(rank());
  for (std::size_t j = 0; j < rank(); ++j) c[j] = add_words(coords_[j], o.coords_[j]);
  return SymbolicTorusElement(std::move(c));
}

SymbolicTorusElement SymbolicTorusElement::translated(const SmallMatrix& w) const {
  const std::size_t d = rank();
  const std::size_t t = d ? coords_[0].size() : 0;
  std::vector<Word> c(d, Word(t, 0));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      long long m = w(i, j);
      if (m == 0) continue;
      c[i] = add_words(c[i], scale_word(coords_[j], m));
    }
  return SymbolicTorusElement(std::move(c));
}

SymbolicTorusElement SymbolicTorusElement::canonical(const FPAbelianGroup& A) const {
  std::vector<Word> c;
  c.reserve(rank());
  for (const auto& w : coords_) c.push_back(A.canonical(w));
  return SymbolicTorusElement(std::move(c));
}

SymbolicTorusElement parse_torus_element(const RootDatum& rd, const EigenvalueDatum& eig, std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  auto open = s.find('(');
  if (open == std::string::npos || s.back() != ')')
    throw Error(ErrorKind::Parse, "E_CLASS", "class must look like diag(...) or coords(...): '" + s + "'");
  std::string head = s.substr(0, open);
  auto args = split_args(std::string_view(s).substr(open + 1, s.size() - open - 2));
  std::vector<Word> words;
  for (const auto& a : args) words.push_back(eig.parse_word(a));
  if (head == "coords") {
    if (words.size() != rd.rank())
      throw Error(ErrorKind::Parse, "E_CLASS",
                  "coords(...) needs " + std::to_string(rd.rank()) + " entries, got " + std::to_string(words.size()));
    return SymbolicTorusElement(std::move(words));
  }
  if (head == "diag") {
    if (!rd.diagonal_map())
      throw Error(ErrorKind::Parse, "E_CLASS", "diag(...) shorthand unavailable for " + rd.label() + "; use coords(...)");
    const auto& m = *rd.diagonal_map();
    if (words.size() != m.cols())
      throw Error(ErrorKind::Parse, "E_CLASS",
                  "diag(...) needs " + std::to_string(m.cols()) + " entries, got " + std::to_string(words.size()));
    std::vector<Word> c(rd.rank(), eig.identity());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (m(i, j)) c[i] = add_words(c[i], scale_word(words[j], m(i, j)));
    return SymbolicTorusElement(std::move(c));
  }
  throw Error(ErrorKind::Parse, "E_CLASS", "unknown class form '" + head + "'");
}

Word evaluate_character(const Vec& x, const SymbolicTorusElement& S) {
  if (x.size() != S.rank()) throw Error(ErrorKind::Validation, "E_DIMENSION", "character length differs from rank");
  Word out = S.rank() ? Word(S.coordinate(0).size(), 0) : Word{};
  for (std::size_t j = 0; j < x.size(); ++j)
    if (x[j]) out = add_words(out, scale_word(S.coordinate(j), x[j]));
  return out;
}

bool strongly_regular(const RootDatum& rd, const WeylGroup& W, const EigenvalueDatum& eig,
                      const SymbolicTorusElement& S) {
  const auto& A = eig.group();
  for (const auto& a : rd.roots())
    if (A.is_identity(evaluate_character(a, S))) return false;
  const auto base = S.canonical(A);
  for (std::size_t k = 1; k < W.order(); ++k)
    if (S.translated(W.elements[k]).canonical(A) == base) return false;
  return true;
}

bool in_commutator(const LatticeQuotient& quotient, const EigenvalueDatum& eig, const SymbolicTorusElement& S) {
  const auto& V = quotient.basis_change;
  const std::size_t d = S.rank();
  const auto& A = eig.group();
  for (std::size_t i = 0; i < d; ++i) {
    const Integer& div = quotient.divisors[i];
    if (div == 1) continue;
    Word w = eig.identity();
    for (std::size_t j = 0; j < d; ++j)
      if (V(j, i)) w = add_words(w, scale_word(S.coordinate(j), V(j, i)));
    if (div == 0) {
      if (!A.is_identity(w)) return false;
    } else if (!A.is_dth_power(w, div)) {
      return false;
    }
  }
  return true;
}

bool in_commutator(const RootDatum& rd, const RootSet& psi, const EigenvalueDatum& eig,
                   const SymbolicTorusElement& S) {
  std::vector<Word> gens;
  for (int i : psi.indices()) gens.push_back(rd.coroot(static_cast<std::size_t>(i)));
  return in_commutator(lattice_quotient(rd.rank(), gens), eig, S);
}

Polynomial delta_value(const LatticeQuotient& quotient) {
  return Polynomial(Rational(quotient.invariants.torsion_order)) *
         Polynomial::binomial_power(-1, static_cast<unsigned>(quotient.invariants.free_rank));
}

Polynomial delta(const RootDatum& rd, const RootSet& psi, const EigenvalueDatum& eig, const SymbolicTorusElement& S) {
  std::vector<Word> gens;
  for (int i : psi.indices()) gens.push_back(rd.coroot(static_cast<std::size_t>(i)));
  auto q = lattice_quotient(rd.rank(), gens);
  return in_commutator(q, eig, S) ? delta_value(q) : Polynomial();
}

Polynomial alpha(const SubsystemPoset& poset, std::size_t node, const EigenvalueDatum& eig,
                 const SymbolicTorusElement& S) {
  Polynomial sum;
  for (std::size_t j : poset.above(node)) {
    long long mu = poset.mobius(node, j);
    if (mu == 0) continue;
    const auto& q = poset.node(j).quotient;
    if (in_commutator(q, eig, S)) sum += Polynomial(mu) * delta_value(q);
  }
  return sum;
}

SymbolicTorusElement weyl_translate(std::span<const SmallMatrix> ws, std::span<const SymbolicTorusElement> S) {
  if (ws.size() != S.size() || S.empty())
    throw Error(ErrorKind::Validation, "E_DIMENSION", "Weyl tuple and class tuple lengths differ");
  SymbolicTorusElement out = S[0].translated(ws[0]);
  for (std::size_t i = 1; i < S.size(); ++i) out = out * S[i].translated(ws[i]);
  return out;
}

}  // namespace charvar
