#include "hecke/literal.hpp"

#include <cctype>

namespace hecke {

namespace {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

std::vector<Token> split_ws(std::string_view s, std::size_t offset) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i >= s.size()) break;
    std::size_t start = i;
    if (s[i] == '(') {
      while (i < s.size() && s[i] != ')') ++i;
      if (i < s.size()) ++i;
    } else {
      while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    out.push_back({std::string(s.substr(start, i - start)), offset + start + 1});
  }
  return out;
}

Rational rational_at(const Token& t) {
  try {
    return Rational::parse(t.text);
  } catch (const std::exception&) {
    throw ParseError("expected a rational, got '" + t.text + "'", 1, t.column);
  }
}

long integer_at(const std::string& s, std::size_t column) {
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size() || s.empty()) throw ParseError("expected an integer, got '" + s + "'", 1, column);
  return v;
}

void expect_count(const std::vector<Token>& toks, std::size_t n, std::string_view what) {
  if (toks.size() != n + 1) {
    std::size_t col = toks.size() > n + 1 ? toks[n + 1].column : toks.back().column;
    throw ParseError(std::string(what) + " takes " + std::to_string(n) + " argument(s)", 1, col);
  }
}

GroupElement parse_element_at(std::string_view text, std::size_t offset) {
  auto toks = split_ws(text, offset);
  if (toks.empty()) throw ParseError("empty element literal", 1, offset + 1);
  const std::string& head = toks[0].text;
  if (head == "fin") {
    expect_count(toks, 1, "fin");
    long k = integer_at(toks[1].text, toks[1].column);
    if (k < 0) throw ParseError("fin index must be nonnegative", 1, toks[1].column);
    return fin(static_cast<std::uint32_t>(k));
  }
  if (head == "mat2") {
    expect_count(toks, 4, "mat2");
    GroupElement m = mat2(rational_at(toks[1]), rational_at(toks[2]), rational_at(toks[3]),
                          rational_at(toks[4]));
    if (m.as<Mat2>().det().is_zero()) throw ParseError("singular matrix", 1, toks[0].column);
    return m;
  }
  if (head == "axb") {
    expect_count(toks, 2, "axb");
    Rational a = rational_at(toks[1]);
    if (a.sign() <= 0) throw ParseError("axb needs a > 0", 1, toks[1].column);
    return axb(a, rational_at(toks[2]));
  }
  if (head == "word") {
    expect_count(toks, 1, "word");
    try {
      return word(toks[1].text);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), 1, toks[1].column);
    }
  }
  if (head == "semi") {
    expect_count(toks, 2, "semi");
    const auto& v = toks[1];
    if (v.text.size() < 2 || v.text.front() != '(' || v.text.back() != ')')
      throw ParseError("semi expects a parenthesized vector", 1, v.column);
    std::vector<int> normal;
    std::string body = v.text.substr(1, v.text.size() - 2);
    std::size_t start = 0;
    while (start <= body.size()) {
      auto comma = body.find(',', start);
      if (comma == std::string::npos) comma = body.size();
      std::string part = body.substr(start, comma - start);
      while (!part.empty() && std::isspace(static_cast<unsigned char>(part.front()))) part.erase(0, 1);
      while (!part.empty() && std::isspace(static_cast<unsigned char>(part.back()))) part.pop_back();
      normal.push_back(static_cast<int>(integer_at(part, v.column + 1 + start)));
      start = comma + 1;
    }
    long s = integer_at(toks[2].text, toks[2].column);
    if (s != 1 && s != -1) throw ParseError("acting part must be 1 or -1", 1, toks[2].column);
    return semi(std::move(normal), static_cast<int>(s));
  }
  throw ParseError("unknown element kind '" + head + "'", 1, toks[0].column);
}

std::vector<std::pair<std::string_view, std::size_t>> split_terms(std::string_view text) {
  std::vector<std::pair<std::string_view, std::size_t>> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto semi_pos = text.find(';', start);
    if (semi_pos == std::string_view::npos) semi_pos = text.size();
    auto part = text.substr(start, semi_pos - start);
    bool blank = true;
    for (char c : part)
      if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    if (!blank) out.emplace_back(part, start);
    start = semi_pos + 1;
  }
  return out;
}

}  // namespace

GroupElement parse_element(std::string_view text) { return parse_element_at(text, 0); }

std::vector<GroupElement> parse_element_list(std::string_view text) {
  std::vector<GroupElement> out;
  for (auto [part, off] : split_terms(text)) out.push_back(parse_element_at(part, off));
  return out;
}

HeckeElement parse_hecke(const PairPtr& pair, std::string_view text, const Budget& budget) {
  HeckeElement f(pair);
  auto terms = split_terms(text);
  if (terms.empty()) throw ParseError("empty Hecke element", 1, 1);
  for (auto [part, off] : terms) {
    auto at = part.find('@');
    CRational c(1);
    std::string_view elem = part;
    std::size_t elem_off = off;
    if (at != std::string_view::npos) {
      std::string coeff(part.substr(0, at));
      while (!coeff.empty() && std::isspace(static_cast<unsigned char>(coeff.back()))) coeff.pop_back();
      while (!coeff.empty() && std::isspace(static_cast<unsigned char>(coeff.front()))) coeff.erase(0, 1);
      try {
        c = CRational::parse(coeff);
      } catch (const std::exception&) {
        throw ParseError("bad coefficient '" + coeff + "'", 1, off + 1);
      }
      elem = part.substr(at + 1);
      elem_off = off + at + 1;
    }
    GroupElement x = parse_element_at(elem, elem_off);
    if (!pair->group().contains(x))
      throw ParseError("element " + x.literal() + " is not in " + pair->group().description(), 1,
                       elem_off + 1);
    f.add(double_coset_decompose(*pair, x, budget), c);
  }
  return f;
}

}  // namespace hecke
