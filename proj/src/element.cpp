#include "hecke/element.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace hecke {

const char* kind_name(ElementKind k) {
  switch (k) {
    case ElementKind::Finite: return "finite";
    case ElementKind::Mat2: return "mat2";
    case ElementKind::AxB: return "axb";
    case ElementKind::Semidirect: return "semidirect";
    case ElementKind::Word: return "free";
  }
  return "?";
}

bool Mat2::has_integer_entries() const {
  for (const auto& e : m)
    if (!e.is_integer()) return false;
  return true;
}

Word Word::reduced(const std::vector<int>& letters) {
  Word w;
  for (int l : letters) {
    if (l == 0) throw std::invalid_argument("Word: letter 0 is not a generator");
    if (!w.letters.empty() && w.letters.back() == -l)
      w.letters.pop_back();
    else
      w.letters.push_back(l);
  }
  return w;
}

bool Word::is_reduced() const {
  for (std::size_t i = 0; i + 1 < letters.size(); ++i)
    if (letters[i] == -letters[i + 1]) return false;
  for (int l : letters)
    if (l == 0) return false;
  return true;
}

namespace {

std::string letters_string(const Word& w) {
  std::string s;
  for (int l : w.letters) {
    char c = static_cast<char>('a' + (l > 0 ? l : -l) - 1);
    s.push_back(l > 0 ? c : static_cast<char>(std::toupper(c)));
  }
  return s;
}

}  // namespace

std::string GroupElement::literal() const {
  std::ostringstream os;
  switch (kind()) {
    case ElementKind::Finite:
      os << "fin " << as<FiniteIdx>().index;
      break;
    case ElementKind::Mat2: {
      const auto& m = as<Mat2>().m;
      os << "mat2 " << m[0] << ' ' << m[1] << ' ' << m[2] << ' ' << m[3];
      break;
    }
    case ElementKind::AxB:
      os << "axb " << as<AxB>().a << ' ' << as<AxB>().b;
      break;
    case ElementKind::Semidirect: {
      const auto& s = as<Semidirect>();
      os << "semi (";
      for (std::size_t i = 0; i < s.normal.size(); ++i) os << (i ? "," : "") << s.normal[i];
      os << ") " << s.acting;
      break;
    }
    case ElementKind::Word: {
      const auto& w = as<Word>();
      os << "word " << (w.letters.empty() ? std::string("1") : letters_string(w));
      break;
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const GroupElement& g) { return os << g.literal(); }

GroupElement axb(const Rational& a, const Rational& b) { return AxB{a, b}; }

GroupElement mat2(const Rational& a, const Rational& b, const Rational& c, const Rational& d) {
  return Mat2{{a, b, c, d}};
}

GroupElement word(const std::string& letters) {
  std::vector<int> ls;
  for (char c : letters) {
    if (c == '1' && letters.size() == 1) break;
    if (!std::isalpha(static_cast<unsigned char>(c)))
      throw std::invalid_argument(std::string("word: bad letter '") + c + "'");
    int idx = std::tolower(static_cast<unsigned char>(c)) - 'a' + 1;
    ls.push_back(std::isupper(static_cast<unsigned char>(c)) ? -idx : idx);
  }
  return Word::reduced(ls);
}

GroupElement semi(std::vector<int> normal, int acting) { return Semidirect{std::move(normal), acting}; }

GroupElement fin(std::uint32_t index) { return FiniteIdx{index}; }

}  // namespace hecke
