#include "cubecalc/chain.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "cubecalc/errors.hpp"
#include "cubecalc/linalg.hpp"

namespace cubecalc {

std::string ring_name(Ring r) { return r == Ring::integers ? "Z" : "Q"; }

// ------------------------------------------------------------- ChainComplex

ChainComplex::ChainComplex(Ring ring, std::map<int, std::size_t> ranks,
                           std::map<int, Matrix> diffs,
                           std::map<int, std::vector<std::string>> labels)
    : ring_(ring) {
  for (const auto& [n, r] : ranks)
    if (r > 0) ranks_[n] = r;
  for (auto& [n, d] : diffs) {
    if (d.rows() != rank(n - 1) || d.cols() != rank(n))
      throw InvariantError("differential d_" + std::to_string(n) + " has shape " +
                           std::to_string(d.rows()) + "x" + std::to_string(d.cols()) +
                           ", expected " + std::to_string(rank(n - 1)) + "x" +
                           std::to_string(rank(n)));
    if (ring_ == Ring::integers && !d.is_integral())
      throw InvariantError("non-integral differential d_" + std::to_string(n) +
                           " in a complex over Z");
    if (!d.is_zero()) diffs_[n] = std::move(d);
  }
  for (auto it = diffs_.begin(); it != diffs_.end(); ++it) {
    auto next = diffs_.find(it->first + 1);
    if (next != diffs_.end() && !(it->second * next->second).is_zero())
      throw InvariantError("d_" + std::to_string(it->first) + " o d_" +
                           std::to_string(it->first + 1) + " is not zero");
  }
  for (auto& [n, names] : labels) {
    if (names.size() != rank(n))
      throw InvariantError("degree " + std::to_string(n) + " has " +
                           std::to_string(names.size()) + " labels for rank " +
                           std::to_string(rank(n)));
    if (!names.empty()) labels_[n] = std::move(names);
  }
}

std::size_t ChainComplex::rank(int n) const {
  auto it = ranks_.find(n);
  return it == ranks_.end() ? 0 : it->second;
}

Matrix ChainComplex::diff(int n) const {
  auto it = diffs_.find(n);
  if (it != diffs_.end()) return it->second;
  return Matrix(rank(n - 1), rank(n));
}

int ChainComplex::min_degree() const {
  if (ranks_.empty()) throw InputError("zero complex has no degrees");
  return ranks_.begin()->first;
}

int ChainComplex::max_degree() const {
  if (ranks_.empty()) throw InputError("zero complex has no degrees");
  return ranks_.rbegin()->first;
}

std::size_t ChainComplex::total_rank() const {
  std::size_t t = 0;
  for (const auto& kv : ranks_) t += kv.second;
  return t;
}

long long ChainComplex::euler_characteristic() const {
  long long chi = 0;
  for (const auto& [n, r] : ranks_) chi += (n % 2 == 0 ? 1 : -1) * static_cast<long long>(r);
  return chi;
}

bool operator==(const ChainComplex& a, const ChainComplex& b) {
  return a.ring_ == b.ring_ && a.ranks_ == b.ranks_ && a.diffs_ == b.diffs_;
}

ComplexPtr share(ChainComplex c) { return std::make_shared<const ChainComplex>(std::move(c)); }

// ----------------------------------------------------------------- ChainMap

ChainMap::ChainMap(ComplexPtr source, ComplexPtr target, std::map<int, Matrix> mats)
    : source_(std::move(source)), target_(std::move(target)) {
  if (!source_ || !target_) throw InvariantError("chain map endpoints must be set");
  if (source_->ring() != target_->ring())
    throw InvariantError("chain map between complexes over different rings");
  for (auto& [n, m] : mats) {
    if (m.rows() != target_->rank(n) || m.cols() != source_->rank(n))
      throw InvariantError("chain map matrix in degree " + std::to_string(n) + " has shape " +
                           std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                           ", expected " + std::to_string(target_->rank(n)) + "x" +
                           std::to_string(source_->rank(n)));
    if (source_->ring() == Ring::integers && !m.is_integral())
      throw InvariantError("non-integral chain map over Z");
    if (!m.is_zero()) mats_[n] = std::move(m);
  }
  std::set<int> degrees;
  for (const auto& kv : source_->ranks()) degrees.insert(kv.first);
  for (int n : degrees) {
    // f_{n-1} d_n == d_n f_n
    const Matrix lhs = at(n - 1) * source_->diff(n);
    const Matrix rhs = target_->diff(n) * at(n);
    if (!(lhs == rhs))
      throw InvariantError("chain map does not commute with the differential in degree " +
                           std::to_string(n));
  }
}

ChainMap ChainMap::identity(ComplexPtr c) {
  std::map<int, Matrix> mats;
  for (const auto& [n, r] : c->ranks()) mats[n] = Matrix::identity(r);
  return ChainMap(c, c, std::move(mats));
}

ChainMap ChainMap::zero(ComplexPtr source, ComplexPtr target) {
  return ChainMap(std::move(source), std::move(target), {});
}

Matrix ChainMap::at(int n) const {
  auto it = mats_.find(n);
  if (it != mats_.end()) return it->second;
  return Matrix(target_->rank(n), source_->rank(n));
}

ChainMap ChainMap::after(const ChainMap& first) const {
  if (!(first.target() == source()))
    throw InvariantError("composing chain maps with mismatched middle complex");
  std::map<int, Matrix> mats;
  for (const auto& [n, m] : mats_) {
    auto it = first.mats_.find(n);
    if (it != first.mats_.end()) mats[n] = m * it->second;
  }
  return ChainMap(first.source_, target_, std::move(mats));
}

ChainMap ChainMap::operator+(const ChainMap& other) const {
  if (!(source() == other.source()) || !(target() == other.target()))
    throw InvariantError("adding chain maps with different endpoints");
  std::map<int, Matrix> mats = mats_;
  for (const auto& [n, m] : other.mats_) {
    auto it = mats.find(n);
    if (it == mats.end())
      mats[n] = m;
    else
      it->second = it->second + m;
  }
  return ChainMap(source_, target_, std::move(mats));
}

ChainMap ChainMap::scaled(const Scalar& c) const {
  std::map<int, Matrix> mats;
  for (const auto& [n, m] : mats_) mats[n] = m.scaled(c);
  return ChainMap(source_, target_, std::move(mats));
}

bool ChainMap::is_identity() const {
  if (!(source() == target())) return false;
  for (const auto& [n, r] : source_->ranks())
    if (!(at(n) == Matrix::identity(r))) return false;
  return true;
}

bool operator==(const ChainMap& a, const ChainMap& b) {
  if (a.source_ != b.source_ && !(*a.source_ == *b.source_)) return false;
  if (a.target_ != b.target_ && !(*a.target_ == *b.target_)) return false;
  return a.mats_ == b.mats_;
}

// ----------------------------------------------------------------- homology

std::size_t HomologySummary::betti(int n) const {
  auto it = degrees.find(n);
  return it == degrees.end() ? 0 : it->second.betti;
}

std::size_t HomologySummary::total_betti() const {
  std::size_t t = 0;
  for (const auto& kv : degrees) t += kv.second.betti;
  return t;
}

std::optional<int> HomologySummary::lowest_degree() const {
  if (degrees.empty()) return std::nullopt;
  return degrees.begin()->first;
}

std::string HomologySummary::to_string() const {
  if (degrees.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [n, h] : degrees) {
    out << (first ? "" : ", ") << "H" << n << "=";
    first = false;
    bool any = false;
    if (h.betti > 0) {
      out << ring_name(ring) << (h.betti > 1 ? "^" + std::to_string(h.betti) : "");
      any = true;
    }
    for (const auto& t : h.torsion) {
      out << (any ? "+" : "") << "Z/" << t.get_str();
      any = true;
    }
  }
  return out.str();
}

HomologySummary homology(const ChainComplex& c) {
  HomologySummary out;
  out.ring = c.ring();
  if (c.is_zero()) return out;

  // rank(d_n) and, over Z, the invariant factors of d_n, for each n whose
  // matrix is nonzero.
  std::map<int, std::size_t> diff_rank;
  std::map<int, std::vector<mpz_class>> factors;
  for (const auto& [n, d] : c.diffs()) {
    if (c.ring() == Ring::integers) {
      auto f = smith_invariant_factors(d);
      diff_rank[n] = f.size();
      factors[n] = std::move(f);
    } else {
      diff_rank[n] = rank_over_q(d);
    }
  }
  auto rank_of = [&](int n) {
    auto it = diff_rank.find(n);
    return it == diff_rank.end() ? std::size_t{0} : it->second;
  };
  for (const auto& [n, r] : c.ranks()) {
    DegreeHomology h;
    h.betti = r - rank_of(n) - rank_of(n + 1);
    if (c.ring() == Ring::integers) {
      auto it = factors.find(n + 1);
      if (it != factors.end())
        for (const auto& f : it->second)
          if (f > 1) h.torsion.push_back(f);
    }
    if (!h.is_zero()) out.degrees[n] = std::move(h);
  }
  return out;
}

// ----------------------------------------------------------------- hofiber

namespace {

std::set<int> support_union(const ChainComplex& a, const ChainComplex& b, int b_offset) {
  std::set<int> out;
  for (const auto& kv : a.ranks()) out.insert(kv.first);
  for (const auto& kv : b.ranks()) out.insert(kv.first - b_offset);
  return out;
}

}  // namespace

ChainComplex hofiber(const ChainMap& f) {
  const ChainComplex& a = f.source();
  const ChainComplex& b = f.target();
  const auto degrees = support_union(a, b, 1);
  std::map<int, std::size_t> ranks;
  for (int n : degrees) ranks[n] = a.rank(n) + b.rank(n + 1);
  std::map<int, Matrix> diffs;
  for (int n : degrees) {
    if (!ranks.count(n - 1)) continue;
    // Rows: A_{n-1} (+) B_n ; columns: A_n (+) B_{n+1}.
    MatrixBuilder m(a.rank(n - 1) + b.rank(n), a.rank(n) + b.rank(n + 1));
    m.add_block(0, 0, a.diff(n));
    m.add_block(a.rank(n - 1), 0, f.at(n));
    m.add_block(a.rank(n - 1), a.rank(n), b.diff(n + 1), Scalar(-1));
    diffs[n] = std::move(m).build();
  }
  return ChainComplex(a.ring(), std::move(ranks), std::move(diffs));
}

ChainMap hofiber_map(const ChainMap& top, const ChainMap& bottom, const ChainMap& left,
                     const ChainMap& right) {
  if (!(left.source() == top.source()) || !(left.target() == bottom.source()) ||
      !(right.source() == top.target()) || !(right.target() == bottom.target()))
    throw InvariantError("hofiber_map: square endpoints do not match");
  // The constructor of ChainMap below re-checks commutation with the hofiber
  // differentials, which is exactly commutativity of the square.
  auto src = share(hofiber(top));
  auto tgt = share(hofiber(bottom));
  std::map<int, Matrix> mats;
  for (const auto& entry : src->ranks()) {
    const int n = entry.first;
    const auto& a = top.source();
    const auto& b = top.target();
    const auto& a2 = bottom.source();
    const auto& b2 = bottom.target();
    MatrixBuilder m(a2.rank(n) + b2.rank(n + 1), a.rank(n) + b.rank(n + 1));
    m.add_block(0, 0, left.at(n));
    m.add_block(a2.rank(n), a.rank(n), right.at(n + 1));
    mats[n] = std::move(m).build();
  }
  try {
    return ChainMap(src, tgt, std::move(mats));
  } catch (const InvariantError&) {
    throw InvariantError("hofiber_map: square does not commute");
  }
}

Connectivity connectivity(const ChainMap& f) { return homology(hofiber(f)).lowest_degree(); }

std::string connectivity_text(const Connectivity& c) {
  return c ? std::to_string(*c) : std::string("inf");
}

// ------------------------------------------------------------ constructors

ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b) {
  if (a.ring() != b.ring()) throw InvariantError("direct sum over different rings");
  const auto degrees = support_union(a, b, 0);
  std::map<int, std::size_t> ranks;
  std::map<int, Matrix> diffs;
  for (int n : degrees) {
    ranks[n] = a.rank(n) + b.rank(n);
    MatrixBuilder m(a.rank(n - 1) + b.rank(n - 1), a.rank(n) + b.rank(n));
    m.add_block(0, 0, a.diff(n));
    m.add_block(a.rank(n - 1), a.rank(n), b.diff(n));
    diffs[n] = std::move(m).build();
  }
  return ChainComplex(a.ring(), std::move(ranks), std::move(diffs));
}

ChainMap direct_sum(const ChainMap& f, const ChainMap& g) {
  auto src = share(direct_sum(f.source(), g.source()));
  auto tgt = share(direct_sum(f.target(), g.target()));
  std::map<int, Matrix> mats;
  for (const auto& [n, r] : src->ranks()) {
    MatrixBuilder m(tgt->rank(n), r);
    m.add_block(0, 0, f.at(n));
    m.add_block(f.target().rank(n), f.source().rank(n), g.at(n));
    mats[n] = std::move(m).build();
  }
  return ChainMap(src, tgt, std::move(mats));
}

ChainComplex shift(const ChainComplex& c, int k) {
  std::map<int, std::size_t> ranks;
  std::map<int, Matrix> diffs;
  std::map<int, std::vector<std::string>> labels;
  for (const auto& [n, r] : c.ranks()) ranks[n + k] = r;
  for (const auto& [n, d] : c.diffs()) diffs[n + k] = d;
  for (const auto& [n, l] : c.labels()) labels[n + k] = l;
  return ChainComplex(c.ring(), std::move(ranks), std::move(diffs), std::move(labels));
}

ChainComplex tensor(const ChainComplex& a, const ChainComplex& b) {
  if (a.ring() != b.ring()) throw InvariantError("tensor product over different rings");
  if (a.is_zero() || b.is_zero()) return ChainComplex(a.ring());
  // Offsets of the A_p (x) B_{n-p} blocks inside degree n.
  std::map<int, std::map<int, std::size_t>> offset;
  std::map<int, std::size_t> ranks;
  for (const auto& [p, ra] : a.ranks())
    for (const auto& [q, rb] : b.ranks()) {
      offset[p + q][p] = ranks[p + q];
      ranks[p + q] += ra * rb;
    }
  std::map<int, Matrix> diffs;
  for (const auto& [n, blocks] : offset) {
    if (!ranks.count(n - 1)) continue;
    MatrixBuilder m(ranks[n - 1], ranks[n]);
    for (const auto& [p, col0] : blocks) {
      const int q = n - p;
      // da (x) b lands in A_{p-1} (x) B_q.
      if (a.rank(p - 1) > 0)
        m.add_block(offset[n - 1].at(p - 1), col0,
                    kronecker(a.diff(p), Matrix::identity(b.rank(q))));
      // (-1)^p a (x) db lands in A_p (x) B_{q-1}.
      if (b.rank(q - 1) > 0)
        m.add_block(offset[n - 1].at(p), col0,
                    kronecker(Matrix::identity(a.rank(p)), b.diff(q)),
                    Scalar(p % 2 == 0 ? 1 : -1));
    }
    diffs[n] = std::move(m).build();
  }
  return ChainComplex(a.ring(), std::move(ranks), std::move(diffs));
}

}  // namespace cubecalc
