#include "holoframe/expression.hpp"

#include <cctype>
#include <map>
#include <string>
#include <utility>

namespace holoframe {

namespace {

// Tag -1: no differential; 0, 1: dzbar1, dzbar2. Basis -1: scalar.
using Key = std::pair<int, int>;

struct Value {
  std::map<Key, ScalarPolynomial> parts;

  static Value scalar(ScalarPolynomial p) {
    Value v;
    if (!p.is_zero()) v.parts.emplace(Key{-1, -1}, std::move(p));
    return v;
  }
  bool is_plain_scalar() const {
    for (const auto& [k, p] : parts)
      if (k != Key{-1, -1}) return false;
    return true;
  }
  ScalarPolynomial plain() const {
    const auto it = parts.find(Key{-1, -1});
    return it == parts.end() ? ScalarPolynomial{} : it->second;
  }
  void add(const Value& o, double sign) {
    for (const auto& [k, p] : o.parts) {
      ScalarPolynomial term = p;
      term *= sign;
      parts[k] += term;
      if (parts[k].is_zero()) parts.erase(k);
    }
  }
};

class Parser {
 public:
  Parser(std::string_view text, const LieAlgebra& g, int n) : s_(text), g_(g), n_(n) {}

  Value parse() {
    Value v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("expression: " + msg + " at position " + std::to_string(pos_) + " in \"" +
                     std::string(s_) + "\"");
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

  Value expr() {
    Value v = term();
    for (;;) {
      if (eat('+')) {
        v.add(term(), 1.0);
      } else if (eat('-')) {
        v.add(term(), -1.0);
      } else {
        return v;
      }
    }
  }

  Value term() {
    Value v = power();
    for (;;) {
      if (eat('*')) {
        v = multiply(v, power());
      } else if (eat('/')) {
        const Value d = power();
        const ScalarPolynomial p = d.plain();
        if (!d.is_plain_scalar() || p.degree() != 0 || p.is_zero()) fail("division by a non-constant");
        const cplx c = p.terms().begin()->second;
        for (auto& [k, q] : v.parts) q *= 1.0 / c;
      } else {
        return v;
      }
    }
  }

  Value power() {
    Value base = unary();
    if (!eat('^')) return base;
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("exponent must be a non-negative integer");
    const int e = std::stoi(std::string(s_.substr(start, pos_ - start)));
    if (e > 12) fail("exponent too large");
    if (!base.is_plain_scalar()) fail("only scalar polynomials can be raised to a power");
    ScalarPolynomial acc = ScalarPolynomial::constant(1.0);
    for (int k = 0; k < e; ++k) acc = acc * base.plain();
    return Value::scalar(acc);
  }

  Value unary() {
    if (eat('-')) {
      Value v = unary();
      Value out;
      out.add(v, -1.0);
      return out;
    }
    if (eat('+')) return unary();
    return primary();
  }

  Value primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (eat('(')) {
      Value v = expr();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return name();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Value number() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.'))
      ++pos_;
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < s_.size() && (s_[look] == '+' || s_[look] == '-')) ++look;
      if (look < s_.size() && std::isdigit(static_cast<unsigned char>(s_[look]))) {
        pos_ = look;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      }
    }
    double x = 0.0;
    try {
      x = std::stod(std::string(s_.substr(start, pos_ - start)));
    } catch (const std::logic_error&) {
      fail("malformed number");
    }
    return Value::scalar(ScalarPolynomial::constant(x));
  }

  Value name() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    const std::string id(s_.substr(start, pos_ - start));
    if (auto b = g_.basis_index(id)) {
      Value v;
      v.parts.emplace(Key{-1, *b}, ScalarPolynomial::constant(1.0));
      return v;
    }
    static const std::map<std::string, int> vars{
        {"z1", kZ1}, {"zbar1", kZbar1}, {"z2", kZ2}, {"zbar2", kZbar2}};
    if (auto it = vars.find(id); it != vars.end()) {
      if (n_ == 1 && (it->second == kZ2 || it->second == kZbar2)) fail(id + " needs n = 2");
      Exponents e{};
      e[static_cast<std::size_t>(it->second)] = 1;
      return Value::scalar(ScalarPolynomial::monomial(e, 1.0));
    }
    if (n_ == 1 && (id == "z" || id == "zbar")) {
      Exponents e{};
      e[id == "z" ? kZ1 : kZbar1] = 1;
      return Value::scalar(ScalarPolynomial::monomial(e, 1.0));
    }
    if (id == "i") return Value::scalar(ScalarPolynomial::constant(cplx(0.0, 1.0)));
    if (id == "dzbar1" || id == "dzbar2" || (n_ == 1 && id == "dzbar")) {
      const int j = id == "dzbar2" ? 1 : 0;
      if (j >= n_) fail(id + " needs n = 2");
      Value v;
      v.parts.emplace(Key{j, -1}, ScalarPolynomial::constant(1.0));
      return v;
    }
    fail("unknown name '" + id + "'");
  }

  Value multiply(const Value& a, const Value& b) {
    Value out;
    for (const auto& [ka, pa] : a.parts)
      for (const auto& [kb, pb] : b.parts) {
        if (ka.first >= 0 && kb.first >= 0) fail("products of differentials are not supported");
        if (ka.second >= 0 && kb.second >= 0) fail("product of two algebra elements");
        const Key k{std::max(ka.first, kb.first), std::max(ka.second, kb.second)};
        Value term;
        term.parts.emplace(k, pa * pb);
        out.add(term, 1.0);
      }
    return out;
  }

  std::string_view s_;
  const LieAlgebra& g_;
  int n_;
  std::size_t pos_ = 0;
};

// Splits tagged parts into per-tag algebra polynomials.
std::map<int, AlgebraPolynomial> to_algebra(const Value& v, const LieAlgebra& g) {
  std::map<int, AlgebraPolynomial> out;
  for (const auto& [k, p] : v.parts) {
    int basis = k.second;
    if (basis < 0) {
      if (g.dim() != 1) throw ParseError("expression: scalar term without an algebra element");
      basis = 0;
    }
    AlgebraPolynomial term;
    for (const auto& [e, c] : p.terms())
      term += AlgebraPolynomial::monomial(e, AlgebraElement(c * g.basis(basis)));
    out[k.first] += term;
  }
  return out;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto k = text.find(sep, start);
    out.push_back(text.substr(start, k == std::string_view::npos ? k : k - start));
    if (k == std::string_view::npos) return out;
    start = k + 1;
  }
}

}  // namespace

AlgebraPolynomial parse_algebra_polynomial(std::string_view text, const LieAlgebra& algebra, int n) {
  return parse_form(text, algebra, n, 0).components.at(0);
}

PolynomialForm parse_form(std::string_view text, const LieAlgebra& algebra, int n, int degree) {
  if (n != 1 && n != 2) throw ParseError("expression: n must be 1 or 2");
  if (degree != 0 && degree != 1) throw ParseError("expression: only (0,0)- and (0,1)-forms");
  if (degree > n) throw ParseError("expression: degree exceeds n");
  PolynomialForm out;
  out.degree = degree;
  const auto pieces = split(text, ';');
  if (pieces.size() > 1) {
    if (degree != 1 || static_cast<int>(pieces.size()) != n)
      throw ParseError("expression: expected " + std::to_string(degree == 1 ? n : 1) +
                       " ';'-separated components");
    for (const auto piece : pieces) {
      auto parts = to_algebra(Parser(piece, algebra, n).parse(), algebra);
      if (parts.size() > 1 || (parts.size() == 1 && parts.begin()->first != -1))
        throw ParseError("expression: differentials inside ';'-separated components");
      out.components.push_back(parts.empty() ? AlgebraPolynomial{} : parts.begin()->second);
    }
    return out;
  }
  auto parts = to_algebra(Parser(text, algebra, n).parse(), algebra);
  if (degree == 0) {
    if (parts.size() > 1 || (parts.size() == 1 && parts.begin()->first != -1))
      throw ParseError("expression: a function cannot contain differentials");
    out.components.push_back(parts.empty() ? AlgebraPolynomial{} : parts.begin()->second);
    return out;
  }
  if (parts.count(-1)) {
    if (n != 1) throw ParseError("expression: term without dzbar1/dzbar2 in a (0,1)-form");
    parts[0] += parts[-1];
  }
  for (int j = 0; j < n; ++j) out.components.push_back(parts.count(j) ? parts[j] : AlgebraPolynomial{});
  return out;
}

}  // namespace holoframe
