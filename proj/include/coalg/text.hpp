#ifndef COALG_TEXT_HPP
#define COALG_TEXT_HPP

// Parsers for the canonical textual forms of functor expressions and values.
//
//   functor := Id | P32 | Const(names) | Lts(names) | Pf(functor) | D(functor)
//            | Times(functor,functor) | Plus(functor,functor)
//            | Comp(functor,functor) | Pow(functor,n)
//   names   := [name {, name}]
//   name    := [A-Za-z0-9_.'#@$-]+ | "quoted"
//
// Values follow the shape of their functor: a name for Id and Const,
// (v,...) for Times, Pow and P32, inl(v) / inr(v) for Plus, {v,...} for Pf,
// {v:w,...} with rational weights w = n or n/d for D.

#include <cctype>
#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include "coalg/errors.hpp"
#include "coalg/felem.hpp"
#include "coalg/function_ref.hpp"
#include "coalg/functor.hpp"

namespace coalg {

/// Character cursor that tracks line and column for error reporting.
class TextCursor {
 public:
  explicit TextCursor(std::string_view text, std::size_t line = 1, std::size_t column = 1)
      : text_(text), line_(line), column_(column) {}

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() != c) return false;
    advance();
    return true;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'" + found());
  }

  bool at_name() {
    const char c = peek();
    return c == '"' || name_char(c);
  }

  std::string name() {
    skip_space();
    std::string out;
    if (pos_ < text_.size() && text_[pos_] == '"') {
      advance();
      while (pos_ < text_.size() && text_[pos_] != '"') {
        if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) advance();
        out += text_[pos_];
        advance();
      }
      if (pos_ >= text_.size()) fail("unterminated quoted name");
      advance();
      return out;
    }
    while (pos_ < text_.size() && name_char(text_[pos_])) {
      out += text_[pos_];
      advance();
    }
    if (out.empty()) fail("expected a name" + found());
    return out;
  }

  std::int64_t integer() {
    skip_space();
    std::size_t end = pos_;
    while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + end, value);
    if (ec != std::errc() || end == pos_) fail("expected a non-negative integer" + found());
    while (pos_ < end) advance();
    return value;
  }

  Weight weight() {
    const std::int64_t num = integer();
    std::int64_t den = 1;
    if (accept('/')) den = integer();
    if (den == 0) fail("zero denominator");
    return Weight(num, den);
  }

  [[noreturn]] void fail(const std::string& what) const { throw parse_error(what, line_, column_); }

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static bool name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '\'' || c == '-' || c == '#' ||
           c == '@' || c == '$';
  }

  std::string found() const {
    if (pos_ >= text_.size()) return ", found end of input";
    return std::string(", found '") + text_[pos_] + "'";
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_;
  std::size_t column_;
};

namespace detail {

inline FinSet parse_name_list(TextCursor& in) {
  std::vector<std::string> names;
  in.expect('(');
  if (!in.accept(')')) {
    do names.push_back(in.name());
    while (in.accept(','));
    in.expect(')');
  }
  try {
    return FinSet(std::move(names));
  } catch (const domain_error& e) {
    in.fail(e.what());
  }
}

inline FunctorExpr parse_functor(TextCursor& in) {
  const std::size_t line = in.line(), column = in.column();
  const std::string head = in.name();
  auto unary = [&] {
    in.expect('(');
    FunctorExpr f = parse_functor(in);
    in.expect(')');
    return f;
  };
  auto binary = [&](auto make) {
    in.expect('(');
    FunctorExpr f = parse_functor(in);
    in.expect(',');
    FunctorExpr g = parse_functor(in);
    in.expect(')');
    return make(std::move(f), std::move(g));
  };
  if (head == "Id") return FunctorExpr::identity();
  if (head == "P32") return FunctorExpr::at_most_two_of_three();
  if (head == "Const") return FunctorExpr::constant(parse_name_list(in));
  if (head == "Lts") return FunctorExpr::labelled_transitions(parse_name_list(in));
  if (head == "Pf") return FunctorExpr::powerset(unary());
  if (head == "D") return FunctorExpr::sub_distribution(unary());
  if (head == "Times") return binary(FunctorExpr::product);
  if (head == "Plus") return binary(FunctorExpr::coproduct);
  if (head == "Comp") return binary(FunctorExpr::compose);
  if (head == "Pow") {
    in.expect('(');
    FunctorExpr f = parse_functor(in);
    in.expect(',');
    const auto n = in.integer();
    in.expect(')');
    return FunctorExpr::power(std::move(f), static_cast<std::size_t>(n));
  }
  throw parse_error("unknown functor '" + head + "'", line, column);
}

using LeafParser = function_ref<FElem(TextCursor&)>;

inline FElem parse_value(TextCursor& in, const FunctorExpr& expr, LeafParser leaf) {
  using K = FunctorExpr::Kind;
  const FunctorExpr& f = expr.unfolded();
  switch (f.kind()) {
    case K::Identity:
      return leaf(in);
    case K::Constant: {
      const std::size_t line = in.line(), column = in.column();
      const std::string n = in.name();
      auto idx = f.constants().find(n);
      if (!idx) throw parse_error("'" + n + "' is not a constant of " + f.text(), line, column);
      return FElem::constant(*idx);
    }
    case K::Product:
    case K::Power:
    case K::AtMostTwoOfThree: {
      const std::size_t arity = f.kind() == K::Product ? 2 : f.kind() == K::Power ? f.exponent() : 3;
      std::vector<FElem> items;
      in.expect('(');
      for (std::size_t i = 0; i < arity; ++i) {
        if (i) in.expect(',');
        if (f.kind() == K::AtMostTwoOfThree) items.push_back(leaf(in));
        else items.push_back(parse_value(in, f.kind() == K::Product && i == 1 ? f.second() : f.first(), leaf));
      }
      in.expect(')');
      return FElem::tuple(std::move(items));
    }
    case K::Coproduct: {
      const std::size_t line = in.line(), column = in.column();
      const std::string tag = in.name();
      if (tag != "inl" && tag != "inr") throw parse_error("expected inl(...) or inr(...)", line, column);
      in.expect('(');
      FElem inner = parse_value(in, tag == "inl" ? f.first() : f.second(), leaf);
      in.expect(')');
      return tag == "inl" ? FElem::inl(std::move(inner)) : FElem::inr(std::move(inner));
    }
    case K::Compose:
      return parse_value(in, f.first(), [&](TextCursor& c) { return parse_value(c, f.second(), leaf); });
    case K::FinPowerset: {
      std::vector<FElem> items;
      in.expect('{');
      if (!in.accept('}')) {
        do items.push_back(parse_value(in, f.first(), leaf));
        while (in.accept(','));
        in.expect('}');
      }
      return FElem::set(std::move(items));
    }
    case K::SubDistribution: {
      std::vector<std::pair<FElem, Weight>> mass;
      in.expect('{');
      if (!in.accept('}')) {
        do {
          FElem item = parse_value(in, f.first(), leaf);
          in.expect(':');
          mass.emplace_back(std::move(item), in.weight());
        } while (in.accept(','));
        in.expect('}');
      }
      return FElem::dist(std::move(mass));
    }
    case K::LabelledTransitions:
      break;
  }
  in.fail("unsupported functor");
}

}  // namespace detail

inline FunctorExpr parse_functor(std::string_view text) {
  TextCursor in(text);
  FunctorExpr f = detail::parse_functor(in);
  if (!in.at_end()) in.fail("trailing input after functor expression");
  return f;
}

/// Parses a value of F(carrier). Unknown leaf names raise validation_error.
inline FElem parse_felem(TextCursor& in, const FunctorExpr& f, const FinSet& carrier) {
  FElem value = detail::parse_value(in, f, [&carrier](TextCursor& c) {
    const std::string n = c.name();
    auto idx = carrier.find(n);
    if (!idx)
      throw validation_error("line " + std::to_string(c.line()) + ": undeclared state '" + n + "'");
    return FElem::atom(*idx);
  });
  validate(f, value, carrier.size());
  return value;
}

inline FElem parse_felem(std::string_view text, const FunctorExpr& f, const FinSet& carrier) {
  TextCursor in(text);
  FElem value = parse_felem(in, f, carrier);
  if (!in.at_end()) in.fail("trailing input after value");
  return value;
}

}  // namespace coalg

#endif
