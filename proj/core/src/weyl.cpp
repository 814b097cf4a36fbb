#include "strataforge/weyl.hpp"

#include <algorithm>
#include <stdexcept>

namespace strataforge {

std::string WeylElement::word_string() const {
  if (word.empty()) return "e";
  std::string s;
  for (int i : word) s += std::to_string(i + 1);
  return s;
}

WeylGroup::WeylGroup(const RootSystem& rs) : rs_(&rs) {
  std::size_t n = rs.size(), r = rs.rank();
  std::vector<std::vector<std::size_t>> simple(r, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t k = 0; k < n; ++k) simple[i][k] = *rs.index_of(rs.reflect(rs.root(k), i));
  }
  std::vector<std::size_t> id(n);
  for (std::size_t k = 0; k < n; ++k) id[k] = k;
  elems_.push_back({id, {}, {}, {}});
  index_[id] = 0;
  // Breadth-first with parents in shortlex order and generators ascending yields
  // the shortlex-minimal word for each element.
  for (std::size_t head = 0; head < elems_.size(); ++head) {
    for (std::size_t i = 0; i < r; ++i) {
      std::vector<std::size_t> p(n);
      for (std::size_t k = 0; k < n; ++k) p[k] = elems_[head].perm[simple[i][k]];
      if (index_.count(p)) continue;
      WeylElement e;
      e.perm = p;
      e.word = elems_[head].word;
      e.word.push_back(static_cast<int>(i));
      index_[p] = elems_.size();
      elems_.push_back(std::move(e));
      if (elems_.size() > 100000) throw std::runtime_error("Weyl group enumeration runaway");
    }
  }
  for (auto& e : elems_) {
    e.on_roots.assign(r, IntVec(r));
    e.on_coroots.assign(r, IntVec(r));
    for (std::size_t j = 0; j < r; ++j) {
      const IntVec& img = rs.root(e.perm[j]);
      const IntVec& cimg = rs.coroot(e.perm[j]);
      for (std::size_t i = 0; i < r; ++i) {
        e.on_roots[i][j] = img[i];
        e.on_coroots[i][j] = cimg[i];
      }
    }
  }
  std::size_t m = elems_.size();
  table_.resize(m * m);
  inv_.resize(m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      std::vector<std::size_t> p(n);
      for (std::size_t k = 0; k < n; ++k) p[k] = elems_[a].perm[elems_[b].perm[k]];
      std::size_t c = index_.at(p);
      table_[a * m + b] = c;
      if (c == 0) inv_[a] = b;
    }
  }
  refl_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<std::size_t> p(n);
    for (std::size_t j = 0; j < n; ++j) p[j] = *rs.index_of(rs.reflect(rs.root(j), k));
    refl_[k] = index_.at(p);
  }
}

std::size_t WeylGroup::longest() const { return elems_.size() - 1; }

std::size_t WeylGroup::find(const std::vector<std::size_t>& perm) const {
  auto it = index_.find(perm);
  if (it == index_.end()) throw std::invalid_argument("permutation is not a Weyl group element");
  return it->second;
}

std::optional<std::size_t> WeylGroup::find_by_coroot_matrix(const IntMat& m) const {
  for (std::size_t k = 0; k < elems_.size(); ++k) {
    if (elems_[k].on_coroots == m) return k;
  }
  return std::nullopt;
}

std::size_t WeylGroup::parse_word(const std::string& w) const {
  if (w == "e" || w.empty()) return 0;
  if (w == "w0") return longest();
  std::size_t x = 0;
  for (char c : w) {
    if (c < '1' || c > '9') throw std::invalid_argument("bad Weyl word '" + w + "'");
    std::size_t i = static_cast<std::size_t>(c - '1');
    if (i >= rs_->rank()) throw std::invalid_argument("Weyl word '" + w + "' exceeds rank");
    x = mul(x, reflection(i));
  }
  return x;
}

std::vector<mpq_class> WeylGroup::act_coweight(std::size_t w, const std::vector<mpq_class>& h) const {
  std::size_t r = rs_->rank();
  std::vector<mpq_class> out(r, 0);
  const auto& m = elems_[w].on_coroots;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) out[i] += m[i][j] * h[j];
  }
  return out;
}

Subgroup generate_subgroup(const WeylGroup& w, const std::vector<std::size_t>& gens) {
  std::vector<bool> in(w.size(), false);
  std::vector<std::size_t> list{w.identity()};
  in[w.identity()] = true;
  for (std::size_t head = 0; head < list.size(); ++head) {
    for (auto g : gens) {
      std::size_t x = w.mul(list[head], g);
      if (!in[x]) {
        in[x] = true;
        list.push_back(x);
      }
    }
  }
  std::sort(list.begin(), list.end());
  return list;
}

bool subgroup_contains(const Subgroup& g, std::size_t x) {
  return std::binary_search(g.begin(), g.end(), x);
}

DoubleCosets double_cosets(const WeylGroup& w, const Subgroup& left, const Subgroup& right) {
  DoubleCosets dc;
  const std::size_t unset = static_cast<std::size_t>(-1);
  dc.coset_of.assign(w.size(), unset);
  for (std::size_t x = 0; x < w.size(); ++x) {
    if (dc.coset_of[x] != unset) continue;
    std::size_t id = dc.reps.size();
    dc.reps.push_back(x);
    for (auto a : left) {
      std::size_t ax = w.mul(a, x);
      for (auto b : right) dc.coset_of[w.mul(ax, b)] = id;
    }
  }
  return dc;
}

}  // namespace strataforge
