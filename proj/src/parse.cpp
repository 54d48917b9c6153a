#include "jetkernel/parse.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "jetkernel/error.hpp"

namespace jetkernel {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Parser {
 public:
  Parser(std::string_view text, std::vector<std::string> vars, bool strict)
      : text_(text), vars_(std::move(vars)), strict_(strict) {}

  Polynomial run() {
    std::vector<std::pair<std::map<std::string, std::uint32_t>, Rational>> terms;
    skip_ws();
    if (at_end()) fail("empty polynomial");
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = get() == '-';
    }
    for (;;) {
      auto [mono, coeff] = term();
      if (negative) coeff = -coeff;
      terms.emplace_back(std::move(mono), std::move(coeff));
      skip_ws();
      if (at_end()) break;
      char c = get();
      if (c != '+' && c != '-') fail(std::string("unexpected '") + c + "'");
      negative = c == '-';
    }
    std::vector<Term> out;
    for (auto& [mono, coeff] : terms) {
      Exponents e(vars_.size(), 0);
      for (const auto& [v, k] : mono) {
        auto it = std::find(vars_.begin(), vars_.end(), v);
        e[static_cast<std::size_t>(it - vars_.begin())] = k;
      }
      out.push_back({std::move(e), coeff});
    }
    return Polynomial::from_terms(vars_, std::move(out));
  }

 private:
  std::pair<std::map<std::string, std::uint32_t>, Rational> term() {
    std::map<std::string, std::uint32_t> mono;
    Rational coeff(1);
    for (;;) {
      skip_ws();
      if (at_end()) fail("expected a factor");
      char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string num = digits();
        skip_ws();
        if (!at_end() && peek() == '/') {
          get();
          skip_ws();
          num += "/" + digits();
        }
        coeff *= parse_rational(num);
      } else if (ident_start(c)) {
        std::string name;
        while (!at_end() && ident_char(peek())) name += get();
        declare(name);
        std::uint32_t k = 1;
        skip_ws();
        if (!at_end() && peek() == '^') {
          get();
          skip_ws();
          std::string exp = digits();
          if (exp.size() > 6) fail("exponent too large");
          k = static_cast<std::uint32_t>(std::stoul(exp));
        }
        mono[name] += k;
      } else {
        fail(std::string("unexpected '") + c + "'");
      }
      skip_ws();
      if (!at_end() && peek() == '*') {
        get();
        continue;
      }
      break;
    }
    std::erase_if(mono, [](const auto& kv) { return kv.second == 0; });
    return {std::move(mono), std::move(coeff)};
  }

  void declare(const std::string& name) {
    if (std::find(vars_.begin(), vars_.end(), name) != vars_.end()) return;
    if (strict_) fail("unknown variable '" + name + "'");
    vars_.push_back(name);
  }

  std::string digits() {
    std::string out;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) out += get();
    if (out.empty()) fail("expected digits");
    return out;
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  char get() { return text_[pos_++]; }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::parse, what + " at offset " + std::to_string(pos_) + " in '" +
                                      std::string(text_) + "'");
  }

  std::string_view text_;
  std::vector<std::string> vars_;
  bool strict_;
  std::size_t pos_ = 0;
};

}  // namespace

bool is_identifier(std::string_view name) {
  if (name.empty() || !ident_start(name[0])) return false;
  return std::all_of(name.begin(), name.end(), ident_char);
}

Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& vars,
                            bool strict) {
  return Parser(text, vars, strict).run();
}

}  // namespace jetkernel
