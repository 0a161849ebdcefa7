#include <algorithm>

#include "geo/groups.hpp"

namespace geo {

GeodesicOracle::GeodesicOracle(std::shared_ptr<const Group> group, std::size_t max_elements)
    : group_(std::move(group)), max_elements_(max_elements), letters_(group_->alphabet().size()) {
  auto it = index_.emplace(group_->identity(), 0).first;
  elements_.push_back(&it->first);
  dist_.push_back(0);
  parent_.push_back(kOutside);
  via_.push_back(0);
  adj_.assign(letters_, kOutside);
  layer_start_ = {0, 1};
}

GeodesicOracle::GeodesicOracle(GroupSpec spec, std::size_t max_elements)
    : GeodesicOracle(std::make_shared<const Group>(std::move(spec)), max_elements) {}

void GeodesicOracle::grow() {
  const std::size_t r = radius();
  if (r >= 255) throw ResourceError("ball radius limit reached");
  const std::size_t begin = layer_start_[r], end = layer_start_[r + 1];
  const std::uint8_t d = static_cast<std::uint8_t>(r + 1);
  try {
    for (std::size_t i = begin; i < end; ++i)
      for (std::size_t x = 0; x < letters_; ++x) {
        Element h = group_->times_letter(*elements_[i], static_cast<Letter>(x));
        auto [it, inserted] = index_.try_emplace(std::move(h), static_cast<std::uint32_t>(elements_.size()));
        if (inserted) {
          if (elements_.size() >= max_elements_) {
            index_.erase(it);
            throw ResourceError("Cayley ball exceeds " + std::to_string(max_elements_) + " elements");
          }
          elements_.push_back(&it->first);
          dist_.push_back(d);
          parent_.push_back(static_cast<std::uint32_t>(i));
          via_.push_back(static_cast<Letter>(x));
        }
        adj_[i * letters_ + x] = it->second;
      }
  } catch (...) {
    // roll back the partial layer
    for (std::size_t k = end; k < elements_.size(); ++k) {
      Element key = *elements_[k];
      index_.erase(key);
    }
    elements_.resize(end);
    dist_.resize(end);
    parent_.resize(end);
    via_.resize(end);
    std::fill(adj_.begin() + begin * letters_, adj_.begin() + end * letters_, kOutside);
    throw;
  }
  layer_start_.push_back(elements_.size());
  adj_.resize(elements_.size() * letters_, kOutside);
}

void GeodesicOracle::ensure_radius(std::size_t r) {
  while (radius() < r) grow();
}

std::vector<std::size_t> GeodesicOracle::sphere_sizes() const {
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r + 1 < layer_start_.size(); ++r) out.push_back(layer_start_[r + 1] - layer_start_[r]);
  return out;
}

std::optional<std::uint32_t> GeodesicOracle::find(const Element& g) const {
  auto it = index_.find(g);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Word GeodesicOracle::word(std::uint32_t i) const {
  Word w;
  for (; parent_[i] != kOutside; i = parent_[i]) w.push_back(via_[i]);
  std::reverse(w.begin(), w.end());
  return w;
}

std::size_t GeodesicOracle::length(const Element& g, std::size_t limit) {
  if (auto n = group_->length(g)) return *n;
  for (;;) {
    if (auto i = find(g)) return dist_[*i];
    if (radius() >= limit) throw ResourceError("element not within radius " + std::to_string(limit));
    grow();
  }
}

std::size_t GeodesicOracle::geodesic_length(const Word& w) { return length(group_->eval(w), w.size()); }

bool GeodesicOracle::is_geodesic(const Word& w) {
  if (w.empty()) return true;
  const Element g = group_->eval(w);
  if (auto n = group_->length(g)) return *n == w.size();
  ensure_radius(w.size() - 1);
  auto i = find(g);
  return !i || dist_[*i] == w.size();
}

Word GeodesicOracle::shortlex_normal_form(const Word& w) {
  const Element g = group_->eval(w);
  for (;;) {
    if (auto i = find(g)) return word(*i);
    if (radius() >= w.size()) throw Error("shortlex_normal_form: element missing from its ball");
    grow();
  }
}

void GeodesicOracle::for_each_geodesic(std::size_t max_len, const std::function<void(const Word&)>& visit) {
  ensure_radius(max_len);
  Word w;
  for (std::size_t len = 0; len <= max_len; ++len) {
    // depth-first in letter order: lexicographic among words of this length
    auto dfs = [&](auto&& self, std::uint32_t i) -> void {
      if (w.size() == len) {
        visit(w);
        return;
      }
      for (std::size_t x = 0; x < letters_; ++x) {
        std::uint32_t j = adj_[std::size_t(i) * letters_ + x];
        if (j == kOutside || dist_[j] != dist_[i] + 1) continue;
        w.push_back(static_cast<Letter>(x));
        self(self, j);
        w.pop_back();
      }
    };
    dfs(dfs, 0);
  }
}

std::vector<Word> GeodesicOracle::geodesic_words(std::size_t max_len) {
  std::vector<Word> out;
  for_each_geodesic(max_len, [&](const Word& w) { out.push_back(w); });
  return out;
}

std::vector<std::uint64_t> GeodesicOracle::geodesic_counts(std::size_t max_len) {
  ensure_radius(max_len);
  std::vector<std::uint64_t> paths(layer_start_[max_len + 1], 0), out(max_len + 1, 0);
  paths[0] = 1;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    out[dist_[i]] += paths[i];
    if (dist_[i] == max_len) continue;
    for (std::size_t x = 0; x < letters_; ++x) {
      std::uint32_t j = adj_[i * letters_ + x];
      if (dist_[j] == dist_[i] + 1) paths[j] += paths[i];
    }
  }
  return out;
}

}  // namespace geo
