#include "cubecalc/polycalc.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <numeric>

#include "cubecalc/errors.hpp"

namespace cubecalc {

MultiPolynomial::MultiPolynomial(std::size_t m) : m_(m) {
  if (m == 0) throw InputError("polynomial needs at least one variable");
}

Scalar MultiPolynomial::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Scalar(0) : it->second;
}

void MultiPolynomial::add_term(const Exponent& e, const Scalar& c) {
  if (e.size() != m_) throw InputError("exponent tuple has the wrong length");
  for (int x : e)
    if (x < 0) throw InputError("negative exponent");
  if (c == 0) return;
  auto [it, fresh] = terms_.try_emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

MultiPolynomial::Exponent MultiPolynomial::degree() const {
  Exponent d(m_, 0);
  for (const auto& [e, c] : terms_)
    for (std::size_t i = 0; i < m_; ++i) d[i] = std::max(d[i], e[i]);
  return d;
}

MultiPolynomial MultiPolynomial::operator+(const MultiPolynomial& o) const {
  if (o.m_ != m_) throw InputError("adding polynomials in different variable counts");
  MultiPolynomial out = *this;
  for (const auto& [e, c] : o.terms_) out.add_term(e, c);
  return out;
}

MultiPolynomial MultiPolynomial::operator-(const MultiPolynomial& o) const {
  return *this + o.scaled(-1);
}

MultiPolynomial MultiPolynomial::scaled(const Scalar& c) const {
  MultiPolynomial out(m_);
  for (const auto& [e, v] : terms_) out.add_term(e, v * c);
  return out;
}

std::string MultiPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Exponent, Scalar>> list(terms_.begin(), terms_.end());
  auto total = [](const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); };
  std::sort(list.begin(), list.end(), [&](const auto& a, const auto& b) {
    const int ta = total(a.first), tb = total(b.first);
    if (ta != tb) return ta > tb;
    return a.first > b.first;
  });
  std::string s;
  for (const auto& [e, c] : list) {
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i + 1);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    const bool negative = c < 0;
    const Scalar mag = negative ? Scalar(-c) : c;
    if (negative)
      s += "-";
    else if (!s.empty())
      s += "+";
    if (mono.empty())
      s += format_scalar(mag);
    else if (mag == 1)
      s += mono;
    else
      s += format_scalar(mag) + "*" + mono;
  }
  return s;
}

namespace {

class PolyParser {
 public:
  explicit PolyParser(const std::string& text) {
    for (char ch : text)
      if (!std::isspace(static_cast<unsigned char>(ch))) s_ += ch;
  }

  struct Term {
    Scalar coeff = 1;
    std::map<std::size_t, int> powers;  // 0-based variable -> exponent
  };

  std::vector<Term> parse() {
    if (s_.empty()) fail("empty polynomial");
    std::vector<Term> out;
    bool first = true;
    while (pos_ < s_.size() || first) {
      Scalar sign = 1;
      if (peek() == '+' || peek() == '-') {
        if (peek() == '-') sign = -1;
        ++pos_;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      Term t = term();
      t.coeff *= sign;
      out.push_back(std::move(t));
    }
    return out;
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  [[noreturn]] void fail(const std::string& why) const {
    throw InputError("polynomial parse error at position " + std::to_string(pos_) + ": " + why);
  }

  std::string digits() {
    std::string d;
    while (std::isdigit(static_cast<unsigned char>(peek()))) d += s_[pos_++];
    if (d.empty()) fail("expected a number");
    if (d.size() > 9) fail("number too long");
    return d;
  }

  Term term() {
    Term t;
    factor(t);
    while (peek() == '*') {
      ++pos_;
      factor(t);
    }
    return t;
  }

  void factor(Term& t) {
    if (peek() == 'x') {
      ++pos_;
      const int index = std::stoi(digits());
      if (index < 1) fail("variables are numbered from x1");
      int e = 1;
      if (peek() == '^') {
        ++pos_;
        e = std::stoi(digits());
      }
      t.powers[static_cast<std::size_t>(index - 1)] += e;
      return;
    }
    std::string num = digits();
    if (peek() == '/') {
      ++pos_;
      num += "/" + digits();
    }
    t.coeff *= parse_scalar(num);
  }

  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

MultiPolynomial MultiPolynomial::parse(const std::string& text, std::size_t m) {
  const auto terms = PolyParser(text).parse();
  std::size_t needed = 1;
  for (const auto& t : terms)
    if (!t.powers.empty()) needed = std::max(needed, t.powers.rbegin()->first + 1);
  if (m == 0) m = needed;
  if (needed > m)
    throw InputError("polynomial uses x" + std::to_string(needed) + " but only " +
                     std::to_string(m) + " variables were declared");
  MultiPolynomial p(m);
  for (const auto& t : terms) {
    Exponent e(m, 0);
    for (const auto& [v, k] : t.powers) e[v] = k;
    p.add_term(e, t.coeff);
  }
  return p;
}

MultiPolynomial truncate_multi(const MultiPolynomial& p, const MultiIndex& j) {
  if (j.size() != p.variables())
    throw InputError("truncation degree " + j.id() + " does not match " +
                     std::to_string(p.variables()) + " variables");
  MultiPolynomial out(p.variables());
  for (const auto& [e, c] : p.terms()) {
    bool keep = true;
    for (std::size_t i = 0; i < e.size(); ++i) keep = keep && e[i] <= j[i];
    if (keep) out.add_term(e, c);
  }
  return out;
}

MultiPolynomial truncate_total(const MultiPolynomial& p, int k) {
  MultiPolynomial out(p.variables());
  for (const auto& [e, c] : p.terms())
    if (std::accumulate(e.begin(), e.end(), 0) <= k) out.add_term(e, c);
  return out;
}

MultiPolynomial homog_extract(const MultiPolynomial& p, const MultiIndex& j) {
  if (j.size() != p.variables()) throw InputError("degree does not match the variable count");
  if (j.size() > 20) throw InputError("too many variables for inclusion-exclusion");
  MultiPolynomial out(p.variables());
  for (std::uint32_t r = 0; r < (1u << j.size()); ++r) {
    std::vector<int> t = j.entries();
    bool empty = false;
    for (std::size_t i = 0; i < t.size(); ++i)
      if (r & (1u << i)) empty |= --t[i] < 0;
    if (empty) continue;
    const MultiPolynomial part = truncate_multi(p, MultiIndex(t));
    out = std::popcount(r) % 2 ? out - part : out + part;
  }
  return out;
}

bool verify_iterated_truncation(const MultiPolynomial& p, const MultiIndex& j,
                                const MultiIndex& k) {
  const MultiPolynomial direct = truncate_multi(p, componentwise_min(j, k));
  return truncate_multi(truncate_multi(p, k), j) == direct &&
         truncate_multi(truncate_multi(p, j), k) == direct;
}

TwoTowersCheck verify_twotowers_identity(const MultiPolynomial& p, int k) {
  if (k < 0) throw InputError("total degree must be nonnegative");
  const std::size_t m = p.variables();
  std::vector<std::vector<int>> tops;
  std::vector<int> t(m, 0);
  auto walk = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 == m) {
      t[i] = left;
      tops.push_back(t);
      return;
    }
    for (int v = left; v >= 0; --v) {
      t[i] = v;
      self(self, i + 1, left - v);
    }
  };
  walk(walk, 0, k);
  if (tops.size() > 22) throw InputError("too many maximal multidegrees for inclusion-exclusion");

  // Group the nonempty subsets of `tops` by their componentwise minimum.
  std::map<std::vector<int>, long long> weight;
  auto subsets = [&](auto&& self, std::size_t i, const std::vector<int>& low, int size) -> void {
    if (i == tops.size()) {
      if (size > 0) weight[low] += size % 2 ? 1 : -1;
      return;
    }
    self(self, i + 1, low, size);
    std::vector<int> next = tops[i];
    if (size > 0)
      for (std::size_t c = 0; c < m; ++c) next[c] = std::min(next[c], low[c]);
    self(self, i + 1, next, size + 1);
  };
  subsets(subsets, 0, std::vector<int>(m, 0), 0);

  TwoTowersCheck out{truncate_total(p, k), MultiPolynomial(m)};
  for (const auto& [low, w] : weight)
    if (w != 0) out.union_side = out.union_side + truncate_multi(p, MultiIndex(low)).scaled(Scalar(static_cast<long>(w)));
  return out;
}

MultiPolynomial random_polynomial(Rng& rng, std::size_t m, int max_exponent,
                                  std::size_t max_terms) {
  MultiPolynomial p(m);
  const std::size_t count = rng.index(max_terms + 1);
  for (std::size_t i = 0; i < count; ++i) {
    MultiPolynomial::Exponent e(m);
    for (auto& x : e) x = rng.uniform(0, max_exponent);
    const int num = rng.uniform(-9, 9);
    const int den = rng.uniform(1, 4);
    Scalar c(num, den);
    c.canonicalize();
    p.add_term(e, c);
  }
  return p;
}

}  // namespace cubecalc
