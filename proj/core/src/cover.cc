#include "topent/cover.h"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "topent/error.h"
#include "topent/set_cover.h"

namespace topent {
namespace {

constexpr std::uint32_t kNoLabel = 0xffffffffU;

std::vector<PointId> intersect(const std::vector<PointId>& a, const std::vector<PointId>& b) {
  std::vector<PointId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Refines `labels` by `next`, numbering combined cells by first occurrence.
std::vector<std::uint32_t> refine(const std::vector<std::uint32_t>& labels,
                                  const std::vector<std::uint32_t>& next) {
  std::unordered_map<std::uint64_t, std::uint32_t> ids;
  std::vector<std::uint32_t> out(labels.size());
  for (std::size_t x = 0; x < labels.size(); ++x) {
    const std::uint64_t key = (std::uint64_t{labels[x]} << 32) | next[x];
    auto [it, inserted] = ids.try_emplace(key, static_cast<std::uint32_t>(ids.size()));
    out[x] = it->second;
  }
  return out;
}

OpenCover join_pair(const OpenCover& a, const OpenCover& b) {
  std::vector<std::vector<PointId>> out;
  std::set<std::vector<PointId>> seen;
  for (const auto& u : a.elements()) {
    if (u.empty()) continue;
    for (const auto& v : b.elements()) {
      auto w = intersect(u, v);
      if (w.empty()) continue;
      if (seen.insert(w).second) out.push_back(std::move(w));
    }
  }
  return OpenCover(a.space_size(), std::move(out));
}

}  // namespace

OpenCover::OpenCover(std::size_t space_size, std::vector<std::vector<PointId>> elements)
    : space_size_(space_size), elements_(std::move(elements)) {
  for (auto& e : elements_) {
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    if (!e.empty() && e.back() >= space_size_) throw InvalidArgument("cover element leaves the space");
  }
}

OpenCover OpenCover::from_labels(std::span<const std::uint32_t> labels) {
  std::vector<std::vector<PointId>> cells;
  for (std::size_t x = 0; x < labels.size(); ++x) {
    if (labels[x] == kNoLabel) continue;
    if (labels[x] >= cells.size()) cells.resize(labels[x] + 1);
    cells[labels[x]].push_back(static_cast<PointId>(x));
  }
  std::erase_if(cells, [](const auto& c) { return c.empty(); });
  return OpenCover(labels.size(), std::move(cells));
}

OpenCover OpenCover::trivial(std::size_t space_size) {
  std::vector<PointId> all(space_size);
  for (std::size_t x = 0; x < space_size; ++x) all[x] = static_cast<PointId>(x);
  return OpenCover(space_size, {std::move(all)});
}

bool OpenCover::covers_space() const {
  std::vector<char> hit(space_size_, 0);
  std::size_t count = 0;
  for (const auto& e : elements_) {
    for (auto x : e) {
      if (!hit[x]) {
        hit[x] = 1;
        ++count;
      }
    }
  }
  return count == space_size_;
}

bool OpenCover::is_partition() const {
  std::vector<char> hit(space_size_, 0);
  for (const auto& e : elements_) {
    for (auto x : e) {
      if (hit[x]) return false;
      hit[x] = 1;
    }
  }
  return true;
}

std::vector<std::uint32_t> OpenCover::partition_labels() const {
  std::vector<std::uint32_t> labels(space_size_, kNoLabel);
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    for (auto x : elements_[i]) {
      if (labels[x] != kNoLabel) throw InvalidArgument("cover is not a partition");
      labels[x] = static_cast<std::uint32_t>(i);
    }
  }
  return labels;
}

OpenCover preimage_cover(const OrbitTable& orbits, const OpenCover& cover, std::size_t j) {
  if (cover.space_size() != orbits.size()) throw InvalidArgument("cover and system sizes differ");
  if (j >= orbits.horizon()) throw InvalidArgument("preimage step beyond orbit horizon");
  std::vector<std::vector<PointId>> membership(orbits.size());
  for (std::size_t i = 0; i < cover.size(); ++i) {
    for (auto y : cover[i]) membership[y].push_back(static_cast<PointId>(i));
  }
  std::vector<std::vector<PointId>> out(cover.size());
  for (PointId x = 0; x < orbits.size(); ++x) {
    for (auto i : membership[orbits.at(j, x)]) out[i].push_back(x);
  }
  return OpenCover(cover.space_size(), std::move(out));
}

OpenCover preimage_cover(const Nads& sys, const OpenCover& cover, std::size_t j) {
  return preimage_cover(OrbitTable(sys, j + 1), cover, j);
}

OpenCover join(std::span<const OpenCover> covers) {
  if (covers.empty()) throw InvalidArgument("join of no covers");
  const std::size_t n = covers.front().space_size();
  for (const auto& c : covers) {
    if (c.space_size() != n) throw InvalidArgument("joined covers live on different spaces");
  }
  const bool all_partitions =
      std::all_of(covers.begin(), covers.end(), [](const OpenCover& c) { return c.is_partition() && c.covers_space(); });
  if (all_partitions) {
    std::vector<std::uint32_t> labels = covers.front().partition_labels();
    for (std::size_t i = 1; i < covers.size(); ++i) labels = refine(labels, covers[i].partition_labels());
    return OpenCover::from_labels(labels);
  }
  OpenCover acc = join_pair(OpenCover::trivial(n), covers.front());
  for (std::size_t i = 1; i < covers.size(); ++i) acc = join_pair(acc, covers[i]);
  return acc;
}

OpenCover iterated_join(const OrbitTable& orbits, const OpenCover& cover, std::size_t n) {
  if (n == 0) throw InvalidArgument("iterated join needs at least one term");
  if (n > orbits.horizon()) throw InvalidArgument("iterated join beyond orbit horizon");
  if (cover.is_partition() && cover.covers_space()) {
    const auto base = cover.partition_labels();
    std::vector<std::uint32_t> labels = base;
    std::vector<std::uint32_t> step(orbits.size());
    for (std::size_t j = 1; j < n; ++j) {
      for (PointId x = 0; x < orbits.size(); ++x) step[x] = base[orbits.at(j, x)];
      labels = refine(labels, step);
    }
    return OpenCover::from_labels(labels);
  }
  std::vector<OpenCover> terms;
  terms.reserve(n);
  for (std::size_t j = 0; j < n; ++j) terms.push_back(preimage_cover(orbits, cover, j));
  return join(terms);
}

OpenCover iterated_join(const Nads& sys, const OpenCover& cover, std::size_t n) {
  return iterated_join(OrbitTable(sys, n), cover, n);
}

SubcoverCount minimal_subcover_count(const OpenCover& cover, const CoverCaps& caps) {
  if (cover.size() == 0) throw NotACover("empty family");
  if (!cover.covers_space()) throw NotACover("elements do not cover the space");
  SubcoverCount out;
  const std::size_t n = cover.space_size();
  if (cover.is_partition() && n <= caps.partition_cap) {
    for (std::size_t i = 0; i < cover.size(); ++i) {
      if (!cover[i].empty()) out.chosen.push_back(i);
    }
    out.count = out.lower_bound = out.chosen.size();
    out.exact = true;
    return out;
  }
  SetCoverOptions options;
  options.exact_universe_cap = caps.general_cap;
  const SetCoverResult r = solve_set_cover(n, cover.elements(), options);
  out.count = r.size;
  out.lower_bound = r.lower_bound;
  out.exact = r.exact;
  out.chosen = r.chosen;
  return out;
}

OpenCover example_first_symbol_cover(const SymbolicLayout& layout) {
  if (layout.kind() != SymbolicKind::x_type) throw InvalidArgument("first-symbol cover lives on X");
  std::vector<std::uint32_t> labels(layout.size());
  for (PointId x = 0; x < layout.size(); ++x) labels[x] = static_cast<std::uint32_t>(layout.point(x).word.at(0));
  return OpenCover::from_labels(labels);
}

OpenCover example_v_star_cover(const SymbolicLayout& layout, int n1, int n2) {
  if (layout.kind() != SymbolicKind::y_type) throw InvalidArgument("V* lives on Y");
  if (n1 < 1 || n2 < 1) throw InvalidArgument("V* needs positive N1, N2");
  if (n2 + 1 > layout.word_length()) throw TruncationExceeded("V* cylinders need word length >= N2 + 1");
  if (n1 > layout.level_cap()) throw TruncationExceeded("V* needs level cap >= N1");
  const std::uint32_t blocks = std::uint32_t{1} << n2;
  std::vector<std::vector<PointId>> elements(1 + static_cast<std::size_t>(n1) * blocks);
  for (PointId y = 0; y < layout.size(); ++y) {
    const SpacePoint p = layout.point(y);
    if (p.kind != SpacePoint::Kind::interior || p.level > n1) {
      elements[0].push_back(y);
      continue;
    }
    const std::uint32_t block = static_cast<std::uint32_t>((p.word.bits() >> 1) & (blocks - 1));
    elements[1 + static_cast<std::size_t>(p.level - 1) * blocks + block].push_back(y);
  }
  return OpenCover(layout.size(), std::move(elements));
}

}  // namespace topent
