#include <cctype>

#include "charvar/error.hpp"
#include "charvar/oracle.hpp"

namespace charvar {

namespace {

class Parser {
 public:
  Parser(const FiniteField& F, std::string_view s, const std::map<std::string, unsigned>& v)
      : F_(F), s_(s), vals_(v) {}

  unsigned run() {
    unsigned r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::Parse, "E_EXPR",
                "expression '" + std::string(s_) + "' column " + std::to_string(pos_ + 1) + ": " + what);
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

  unsigned expr() {
    unsigned r = term();
    for (;;) {
      if (eat('+'))
        r = F_.add(r, term());
      else if (eat('-'))
        r = F_.sub(r, term());
      else
        return r;
    }
  }
  unsigned term() {
    unsigned r = unary();
    for (;;) {
      if (eat('*')) {
        r = F_.mul(r, unary());
      } else if (eat('/')) {
        unsigned d = unary();
        if (d == 0) throw Error(ErrorKind::Validation, "E_FIELD_DIV", "division by zero in '" + std::string(s_) + "'");
        r = F_.div(r, d);
      } else {
        return r;
      }
    }
  }
  unsigned unary() {
    if (eat('-')) return F_.neg(unary());
    if (eat('+')) return unary();
    return power();
  }
  unsigned power() {
    unsigned b = atom();
    if (!eat('^')) return b;
    long long e = exponent();
    if (b == 0 && e < 0) throw Error(ErrorKind::Validation, "E_FIELD_DIV", "zero to a negative power");
    return F_.pow(b, e);
  }
  long long exponent() {
    if (eat('(')) {
      long long e = exponent();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    bool neg = eat('-');
    skip();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected exponent");
    long long e = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      e = e * 10 + (s_[pos_++] - '0');
      if (e > 1'000'000'000) fail("exponent too large");
    }
    return neg ? -e : e;
  }
  unsigned atom() {
    skip();
    if (eat('(')) {
      unsigned r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      long long v = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        v = v * 10 + (s_[pos_++] - '0');
        if (v > 1'000'000'000) fail("integer too large");
      }
      return F_.from_integer(v);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      auto it = vals_.find(name);
      if (it == vals_.end()) {
        pos_ = start;
        fail("unknown symbol '" + name + "'");
      }
      return it->second;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const FiniteField& F_;
  std::string_view s_;
  const std::map<std::string, unsigned>& vals_;
  std::size_t pos_ = 0;
};

}  // namespace

unsigned evaluate_expression(const FiniteField& F, std::string_view text, const std::map<std::string, unsigned>& values) {
  return Parser(F, text, values).run();
}

}  // namespace charvar
