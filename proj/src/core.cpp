#include "fracto/core.hpp"

#include <algorithm>
#include <random>

namespace fracto {

std::uint64_t subset_key(const std::vector<int>& sorted_elems) {
  std::uint64_t key = 0;
  for (int e : sorted_elems) key = (key << 8) | static_cast<std::uint64_t>(e + 1);
  return key;
}

std::uint64_t subset_key(const Bits& s) { return subset_key(s.elements()); }

void BaseHull::put(const Bits& subset, const Bits& value) {
  table_[subset_key(subset)] = value;
}

const Bits* BaseHull::find(std::uint64_t key) const {
  auto it = table_.find(key);
  return it == table_.end() ? nullptr : &it->second;
}

const Bits& BaseHull::at(const Bits& subset) const {
  auto it = table_.find(subset_key(subset));
  if (it == table_.end())
    throw MissingEntry("generator table has no entry for " + subset.str());
  return it->second;
}

namespace {

// Visits all subsets of `elems` with sizes 1..max_size as element vectors.
bool visit_small_subsets(const std::vector<int>& elems, int max_size,
                         const std::function<bool(const std::vector<int>&)>& fn) {
  const int m = static_cast<int>(elems.size());
  std::vector<int> cur;
  // iterative combinations per size
  for (int sz = 1; sz <= max_size && sz <= m; ++sz) {
    std::vector<int> idx(sz);
    for (int i = 0; i < sz; ++i) idx[i] = i;
    while (true) {
      cur.clear();
      for (int i : idx) cur.push_back(elems[i]);
      if (!fn(cur)) return false;
      int i = sz - 1;
      while (i >= 0 && idx[i] == m - sz + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < sz; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return true;
}

}  // namespace

void for_each_small_subset(const Bits& of, int max_size,
                           const std::function<bool(const Bits&)>& fn) {
  auto elems = of.elements();
  visit_small_subsets(elems, max_size, [&](const std::vector<int>& sub) {
    return fn(Bits::of(of.universe(), sub));
  });
}

BaseHull BaseHull::from_function(
    const GroundSpace& space,
    const std::function<Bits(const std::vector<int>&)>& h) {
  BaseHull base;
  base.put(Bits(space.size), Bits(space.size));
  std::vector<int> all(space.size);
  for (int i = 0; i < space.size; ++i) all[i] = i;
  visit_small_subsets(all, space.arity, [&](const std::vector<int>& sub) {
    base.put(Bits::of(space.size, sub), h(sub));
    return true;
  });
  return base;
}

SetFamily::SetFamily(std::vector<Bits> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool SetFamily::contains(const Bits& s) const {
  return std::binary_search(members_.begin(), members_.end(), s);
}

SetFamily SetFamily::intersection(const SetFamily& a, const SetFamily& b) {
  std::vector<Bits> out;
  for (const auto& s : a.members_)
    if (b.contains(s)) out.push_back(s);
  return SetFamily(std::move(out));
}

SetFamily SetFamily::set_union(const SetFamily& a, const SetFamily& b) {
  std::vector<Bits> out = a.members_;
  out.insert(out.end(), b.members_.begin(), b.members_.end());
  return SetFamily(std::move(out));
}

bool SetFamily::subset_of(const SetFamily& other) const {
  for (const auto& s : members_)
    if (!other.contains(s)) return false;
  return true;
}

namespace {

// Least fixpoint of C -> C u U{ base(B) : B subset C, |B| <= n }.
Bits close_under(const Bits& start, int arity,
                 const std::function<const Bits*(std::uint64_t)>& lookup) {
  Bits c = start;
  bool changed = true;
  while (changed) {
    changed = false;
    auto elems = c.elements();
    visit_small_subsets(elems, arity, [&](const std::vector<int>& sub) {
      const Bits* h = lookup(subset_key(sub));
      if (h == nullptr)
        throw MissingEntry("generator table has no entry for a subset of size " +
                           std::to_string(sub.size()));
      if (!c.includes(*h)) {
        c |= *h;
        changed = true;
      }
      return true;
    });
  }
  return c;
}

}  // namespace

Convexity make_convexity(const GroundSpace& space, const BaseHull& base,
                         std::string id) {
  const int n = space.size;
  // h(empty) must be empty
  if (const Bits* he = base.find(0)) {
    if (!he->empty())
      throw ExtensivityViolation("h(empty) must be empty for " + id);
  } else {
    throw MissingEntry("generator table has no entry for {} in " + id);
  }

  Convexity conv;
  conv.id_ = std::move(id);
  conv.space_ = space;
  conv.empty_ = Bits(n);
  conv.single_.resize(n, Bits(n));
  if (space.arity >= 2) conv.pair_.resize(static_cast<std::size_t>(n) * n, Bits(n));

  auto lookup = [&](std::uint64_t key) { return base.find(key); };

  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  visit_small_subsets(all, space.arity, [&](const std::vector<int>& sub) {
    Bits b = Bits::of(n, sub);
    const Bits* raw = base.find(subset_key(sub));
    if (raw == nullptr)
      throw MissingEntry("generator table has no entry for " + b.str() +
                         " in " + conv.id_);
    if (!raw->includes(b))
      throw ExtensivityViolation("generator is not extensive at " + b.str() +
                                 " in " + conv.id_);
    Bits closed = close_under(b, space.arity, lookup);
    if (sub.size() == 1) {
      conv.single_[sub[0]] = closed;
    } else if (sub.size() == 2) {
      conv.pair_[static_cast<std::size_t>(sub[0]) * n + sub[1]] = closed;
    } else {
      conv.big_[subset_key(sub)] = closed;
    }
    return true;
  });
  return conv;
}

ConvPtr make_convexity_ptr(const GroundSpace& space, const BaseHull& base,
                           std::string id) {
  return std::make_shared<Convexity>(make_convexity(space, base, std::move(id)));
}

const Bits& Convexity::cached_hull(const Bits& s) const {
  auto elems = s.elements();
  if (elems.empty()) return empty_;
  if (elems.size() == 1) return single_[elems[0]];
  if (elems.size() == 2 && space_.arity >= 2)
    return pair_[static_cast<std::size_t>(elems[0]) * space_.size + elems[1]];
  auto it = big_.find(subset_key(elems));
  if (it == big_.end())
    throw MissingEntry("no closed hull entry for " + s.str() + " in " + id_);
  return it->second;
}

Bits Convexity::hull(const Bits& a) const {
  if (a.universe() != space_.size)
    throw OutOfRange("set universe does not match ground space");
  const int n = space_.size;
  Bits c = a;
  for (int e : a.elements()) c |= single_[e];
  bool changed = true;
  while (changed) {
    changed = false;
    auto elems = c.elements();
    const int m = static_cast<int>(elems.size());
    if (space_.arity >= 2) {
      for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
          const Bits& h = pair_[static_cast<std::size_t>(elems[i]) * n + elems[j]];
          if (!c.includes(h)) {
            c |= h;
            changed = true;
          }
        }
      }
    }
    if (changed) continue;  // re-enumerate pairs on the grown set first
    if (space_.arity >= 3) {
      visit_small_subsets(elems, space_.arity, [&](const std::vector<int>& sub) {
        if (sub.size() < 3) return true;
        auto it = big_.find(subset_key(sub));
        if (it == big_.end())
          throw MissingEntry("no closed hull entry for a subset in " + id_);
        if (!c.includes(it->second)) {
          c |= it->second;
          changed = true;
        }
        return true;
      });
    }
  }
  return c;
}

bool Convexity::is_convex(const Bits& a) const {
  if (a.universe() != space_.size)
    throw OutOfRange("set universe does not match ground space");
  bool ok = true;
  for_each_small_subset(a, space_.arity, [&](const Bits& b) {
    if (!a.includes(cached_hull(b))) {
      ok = false;
      return false;
    }
    return true;
  });
  return ok;
}

void check_enumerable(const GroundSpace& space, int cap) {
  if (space.size > cap)
    throw SpaceTooLarge("space of size " + std::to_string(space.size) +
                        " exceeds enumeration cap " + std::to_string(cap));
}

SetFamily enumerate_convex(const Convexity& conv, int cap) {
  check_enumerable(conv.space(), cap);
  const int n = conv.space().size;
  std::vector<Bits> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Bits a = Bits::from_mask(n, mask);
    if (conv.is_convex(a)) out.push_back(a);
  }
  return SetFamily(std::move(out));
}

Convexity intersect_convexities(const std::vector<ConvPtr>& convs,
                                std::string id) {
  if (convs.empty()) throw EmptyList("intersect_convexities on empty list");
  const GroundSpace space = convs.front()->space();
  for (const auto& c : convs)
    if (!(c->space() == space))
      throw SpaceMismatch("convexities live on different ground spaces");
  if (id.empty()) {
    for (const auto& c : convs) {
      if (!id.empty()) id += "&";
      id += c->id();
    }
  }
  // joint fixpoint: close each small subset under every input's hull table
  auto h = [&](const std::vector<int>& sub) {
    Bits c = Bits::of(space.size, sub);
    bool changed = true;
    while (changed) {
      changed = false;
      bool inner = false;
      for (const auto& conv : convs) {
        Bits grown = conv->hull(c);
        if (!(grown == c)) {
          c = grown;
          inner = true;
        }
      }
      changed = inner;
    }
    return c;
  };
  return make_convexity(space, BaseHull::from_function(space, h), std::move(id));
}

Convexity lift_arity(const Convexity& conv, int new_arity, std::string id) {
  if (new_arity < conv.space().arity)
    throw ArityMismatch("lift_arity cannot lower the arity");
  GroundSpace lifted(conv.space().size, new_arity);
  if (id.empty()) id = conv.id();
  auto h = [&](const std::vector<int>& sub) {
    return conv.hull(Bits::of(conv.space().size, sub));
  };
  return make_convexity(lifted, BaseHull::from_function(lifted, h), std::move(id));
}

AxiomReport check_axioms(const Convexity& conv, int cap,
                         std::uint64_t sample_seed, int sample_count) {
  AxiomReport rep;
  const GroundSpace& space = conv.space();
  const int n = space.size;

  auto probe_pair = [&](const Bits& a, const Bits& b) {
    // b is a superset of a
    Bits ha = conv.hull(a);
    Bits hb = conv.hull(b);
    if (!ha.includes(a) && rep.extensive) {
      rep.extensive = false;
      rep.witnesses.push_back({"extensive", a, ha});
    }
    if (!hb.includes(ha) && rep.monotone) {
      rep.monotone = false;
      rep.witnesses.push_back({"monotone", a, b});
    }
    if (!(conv.hull(ha) == ha) && rep.idempotent) {
      rep.idempotent = false;
      rep.witnesses.push_back({"idempotent", a, ha});
    }
  };
  auto probe_nary = [&](const Bits& a) {
    bool by_small = conv.is_convex(a);
    bool by_fixpoint = conv.hull(a) == a;
    if (by_small != by_fixpoint && rep.n_ary) {
      rep.n_ary = false;
      rep.witnesses.push_back({"n_ary", a, conv.hull(a)});
    }
  };

  if (n <= cap && n <= 20) {
    const std::uint64_t total = std::uint64_t{1} << n;
    std::vector<std::uint64_t> hull_of(total);
    for (std::uint64_t m = 0; m < total; ++m)
      hull_of[m] = conv.hull(Bits::from_mask(n, m)).mask();
    for (std::uint64_t bm = 0; bm < total; ++bm) {
      std::uint64_t hb = hull_of[bm];
      if ((hb & bm) != bm && rep.extensive) {
        rep.extensive = false;
        rep.witnesses.push_back(
            {"extensive", Bits::from_mask(n, bm), Bits::from_mask(n, hb)});
      }
      if (hull_of[hb] != hb && rep.idempotent) {
        rep.idempotent = false;
        rep.witnesses.push_back(
            {"idempotent", Bits::from_mask(n, bm), Bits::from_mask(n, hb)});
      }
      bool by_small = conv.is_convex(Bits::from_mask(n, bm));
      if (by_small != (hb == bm) && rep.n_ary) {
        rep.n_ary = false;
        rep.witnesses.push_back(
            {"n_ary", Bits::from_mask(n, bm), Bits::from_mask(n, hb)});
      }
      // proper subsets of bm
      for (std::uint64_t am = (bm - 1) & bm; rep.monotone;
           am = (am - 1) & bm) {
        if ((hull_of[am] & hb) != hull_of[am]) {
          rep.monotone = false;
          rep.witnesses.push_back(
              {"monotone", Bits::from_mask(n, am), Bits::from_mask(n, bm)});
        }
        if (am == 0) break;
      }
    }
  } else {
    rep.exhaustive = false;
    std::mt19937_64 rng(sample_seed);
    std::uniform_int_distribution<int> coin(0, 3);
    for (int t = 0; t < sample_count; ++t) {
      Bits b(n);
      for (int i = 0; i < n; ++i)
        if (coin(rng) == 0) b.set(i);
      Bits a(n);
      for (int e : b.elements())
        if (coin(rng) < 2) a.set(e);
      probe_pair(a, b);
      probe_nary(b);
    }
    // closed-table entries are cheap to recheck exactly
    for_each_small_subset(Bits::full(n), std::min(space.arity, 2),
                          [&](const Bits& s) {
                            const Bits& h = conv.cached_hull(s);
                            probe_pair(s, h);
                            return true;
                          });
  }
  return rep;
}

Convexity make_interval_convexity(int size, const std::string& id) {
  GroundSpace space(size, 2);
  auto h = [size](const std::vector<int>& sub) {
    int lo = sub.front(), hi = sub.back();
    Bits out(size);
    for (int i = lo; i <= hi; ++i) out.set(i);
    return out;
  };
  return make_convexity(space, BaseHull::from_function(space, h), id);
}

Convexity make_discrete_convexity(int size, int arity, const std::string& id) {
  GroundSpace space(size, arity);
  auto h = [size](const std::vector<int>& sub) { return Bits::of(size, sub); };
  return make_convexity(space, BaseHull::from_function(space, h), id);
}

Convexity make_permuted_interval_convexity(const std::vector<int>& perm,
                                           const std::string& id) {
  const int size = static_cast<int>(perm.size());
  std::vector<int> inv(size, -1);
  for (int i = 0; i < size; ++i) {
    if (perm[i] < 0 || perm[i] >= size || inv[perm[i]] != -1)
      throw NotAPermutation("perm is not a permutation of 0.." +
                            std::to_string(size - 1));
    inv[perm[i]] = i;
  }
  GroundSpace space(size, 2);
  auto h = [&](const std::vector<int>& sub) {
    int a = inv[sub.front()], b = inv[sub.back()];
    if (a > b) std::swap(a, b);
    Bits out(size);
    for (int i = a; i <= b; ++i) out.set(perm[i]);
    return out;
  };
  return make_convexity(space, BaseHull::from_function(space, h), id);
}

}  // namespace fracto
