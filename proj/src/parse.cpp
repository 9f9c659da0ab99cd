#include "mopip/parse.hpp"

#include <cctype>

namespace mopip {

namespace {

class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, const ContextPtr& ctx) : text_(text), ctx_(ctx) {}

  Polynomial parse() {
    std::vector<Term> terms;
    skip_space();
    if (at_end()) throw ParseError("empty expression", pos_);
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = peek() == '-';
      ++pos_;
    }
    terms.push_back(parse_term(negative));
    for (skip_space(); !at_end(); skip_space()) {
      const char op = peek();
      if (op != '+' && op != '-') throw ParseError(std::string("unexpected '") + op + "'", pos_);
      ++pos_;
      terms.push_back(parse_term(op == '-'));
    }
    return Polynomial::from_terms(ctx_, std::move(terms));
  }

 private:
  Term parse_term(bool negative) {
    Rational coeff(negative ? -1 : 1);
    std::vector<unsigned> exps(ctx_->size(), 0);
    parse_factor(coeff, exps);
    for (skip_space(); !at_end() && peek() == '*'; skip_space()) {
      ++pos_;
      parse_factor(coeff, exps);
    }
    return {Monomial(ctx_->size(), exps), coeff};
  }

  void parse_factor(Rational& coeff, std::vector<unsigned>& exps) {
    skip_space();
    if (at_end()) throw ParseError("expected coefficient or variable", pos_);
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer num = parse_digits();
      Integer den = 1;
      skip_space();
      if (!at_end() && peek() == '/') {
        ++pos_;
        skip_space();
        const std::size_t at = pos_;
        den = parse_digits();
        if (den == 0) throw ParseError("zero denominator", at);
      }
      Rational q(num, den);
      q.canonicalize();
      coeff *= q;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
      const std::string_view name = text_.substr(start, pos_ - start);
      auto index = ctx_->find(name);
      if (!index) throw ParseError("unknown variable '" + std::string(name) + "'", start);
      unsigned e = 1;
      skip_space();
      if (!at_end() && peek() == '^') {
        ++pos_;
        skip_space();
        const std::size_t at = pos_;
        Integer big = parse_digits();
        if (big > Monomial::kMaxExponent) throw ParseError("exponent too large", at);
        e = static_cast<unsigned>(big.get_ui());
      }
      const unsigned total = exps[*index] + e;
      if (total > Monomial::kMaxExponent) throw ParseError("exponent too large", start);
      exps[*index] = total;
      return;
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  Integer parse_digits() {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) throw ParseError("expected digits", pos_);
    return Integer(std::string(text_.substr(start, pos_ - start)), 10);
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  [[nodiscard]] bool at_end() const { return pos_ >= text_.size(); }
  [[nodiscard]] char peek() const { return text_[pos_]; }

  std::string_view text_;
  const ContextPtr& ctx_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_expression(std::string_view text, const ContextPtr& ctx) {
  return ExpressionParser(text, ctx).parse();
}

}  // namespace mopip
