#include "gvs/literal.hpp"

#include <cctype>
#include <random>
#include <vector>

#include "gvs/errors.hpp"

namespace gvs {

namespace {

class Cursor {
 public:
  explicit Cursor(const std::string& s) : s_(s) {}

  void skip_space() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip_space();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }
  double number() {
    skip_space();
    const char* begin = s_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("expected a number");
    pos_ += static_cast<std::size_t>(end - begin);
    return v;
  }
  int integer() {
    const double v = number();
    if (v != static_cast<int>(v) || v < 0) fail("expected a non-negative integer");
    return static_cast<int>(v);
  }
  bool done() {
    skip_space();
    return pos_ == s_.size();
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw DomainError("function literal '" + s_ + "': " + what + " at offset " + std::to_string(pos_));
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

int to_int(const std::string& s, const std::string& whole) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw DomainError("function literal '" + whole + "': bad integer '" + s + "'");
  return v;
}

}  // namespace

HermiteExpansion random_expansion(int degree, std::uint64_t seed, int dim) {
  require(degree >= 0, "random_expansion: negative degree");
  HermiteExpansion f(dim, std::max(degree, kDefaultDegreeCap));
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  for (const auto& nu : multi_indices_up_to(dim, degree)) f.set(nu, coef(gen));
  return f;
}

HermiteExpansion parse_function_literal(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw DomainError("function literal '" + text + "': missing kind prefix");
  const std::string kind = text.substr(0, colon), rest = text.substr(colon + 1);
  if (kind == "h") {
    const int n = to_int(rest, text);
    if (n < 0) throw DomainError("function literal '" + text + "': negative degree");
    return HermiteExpansion::basis(n);
  }
  if (kind == "family") {
    auto parts = split(rest, ':');
    if (parts.size() != 3 || parts[0] != "random")
      throw DomainError("function literal '" + text + "': expected family:random:N:seed");
    const int degree = to_int(parts[1], text);
    const int seed = to_int(parts[2], text);
    if (degree < 0 || seed < 0) throw DomainError("function literal '" + text + "': negative field");
    return random_expansion(degree, static_cast<std::uint64_t>(seed));
  }
  if (kind == "expand") {
    Cursor c(rest);
    std::vector<std::pair<MultiIndex, double>> terms;
    c.expect('[');
    if (!c.accept(']')) {
      do {
        c.expect('(');
        std::vector<int> idx;
        if (c.accept('(')) {
          do idx.push_back(c.integer());
          while (c.accept(','));
          c.expect(')');
        } else {
          idx.push_back(c.integer());
        }
        c.expect(',');
        const double coeff = c.number();
        c.expect(')');
        terms.emplace_back(MultiIndex(idx), coeff);
      } while (c.accept(','));
      c.expect(']');
    }
    if (!c.done()) c.fail("trailing characters");
    if (terms.empty()) return HermiteExpansion(1);
    const int dim = static_cast<int>(terms.front().first.dim());
    int cap = kDefaultDegreeCap;
    for (const auto& [nu, v] : terms) {
      if (static_cast<int>(nu.dim()) != dim) c.fail("mixed dimensions");
      cap = std::max(cap, nu.order());
    }
    if (dim < 1 || dim > kMaxDimension) c.fail("unsupported dimension");
    HermiteExpansion f(dim, cap);
    for (const auto& [nu, v] : terms) f.set(nu, f.coeff(nu) + v);
    return f;
  }
  throw DomainError("function literal '" + text + "': unknown kind '" + kind + "' (h|expand|family)");
}

}  // namespace gvs
