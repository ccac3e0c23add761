#include "wlr/coloring.hpp"

#include <algorithm>

#include "wlr/atomic_type.hpp"
#include "wlr/error.hpp"

namespace wlr {

TupleSpace::TupleSpace(int k, std::uint32_t n) : k_(k), n_(n), strides_(k) {
  if (k < 1) throw InputError("tuple dimension must be >= 1");
  std::size_t s = 1;
  for (int i = k - 1; i >= 0; --i) {
    strides_[i] = s;
    if (n != 0 && s > (std::size_t{1} << 40) / n) throw InputError("tuple space too large");
    s *= n;
  }
  size_ = s;
}

std::size_t TupleSpace::index(std::span<const Element> tuple) const {
  std::size_t idx = 0;
  for (int i = 0; i < k_; ++i) idx = idx * n_ + tuple[i];
  return idx;
}

void TupleSpace::decode(std::size_t index, std::span<Element> out) const {
  for (int i = k_ - 1; i >= 0; --i) {
    out[i] = static_cast<Element>(index % n_);
    index /= n_;
  }
}

Tuple TupleSpace::tuple(std::size_t index) const {
  Tuple t(k_);
  decode(index, t);
  return t;
}

TupleColoring TupleColoring::from_raw(int k, std::uint32_t n, std::span<const std::uint64_t> raw) {
  TupleColoring c;
  c.k = k;
  c.n = n;
  if (raw.size() != TupleSpace(k, n).size()) throw InputError("raw coloring has wrong size");
  std::vector<std::uint64_t> values(raw.begin(), raw.end());
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  c.colors.resize(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i)
    c.colors[i] = static_cast<Color>(std::lower_bound(values.begin(), values.end(), raw[i]) -
                                     values.begin());
  c.num_colors = static_cast<std::uint32_t>(values.size());
  return c;
}

TupleColoring TupleColoring::normalized() const {
  std::vector<std::uint64_t> raw(colors.begin(), colors.end());
  return from_raw(k, n, raw);
}

namespace {
// One past the largest id; joint runs may leave gaps in the id range.
std::size_t id_bound(const TupleColoring& chi) {
  Color m = 0;
  for (Color c : chi.colors) m = std::max(m, c);
  return chi.colors.empty() ? 0 : std::size_t(m) + 1;
}

void check_shapes(const TupleColoring& a, const TupleColoring& b) {
  if (a.k != b.k || a.n != b.n || a.colors.size() != b.colors.size())
    throw InputError("colorings have different shapes");
}
}  // namespace

bool coloring_refines(const TupleColoring& chi1, const TupleColoring& chi2) {
  check_shapes(chi1, chi2);
  constexpr Color unset = ~Color{0};
  std::vector<Color> image(id_bound(chi1), unset);
  for (std::size_t i = 0; i < chi1.colors.size(); ++i) {
    Color& img = image[chi1.colors[i]];
    if (img == unset)
      img = chi2.colors[i];
    else if (img != chi2.colors[i])
      return false;
  }
  return true;
}

bool colorings_equivalent(const TupleColoring& chi1, const TupleColoring& chi2) {
  return coloring_refines(chi1, chi2) && coloring_refines(chi2, chi1);
}

bool strictly_refines(const TupleColoring& chi1, const TupleColoring& chi2) {
  return coloring_refines(chi1, chi2) && !coloring_refines(chi2, chi1);
}

std::map<Color, std::size_t> color_histogram(const TupleColoring& chi) {
  std::map<Color, std::size_t> h;
  for (Color c : chi.colors) ++h[c];
  return h;
}

std::vector<std::size_t> class_size_profile(const TupleColoring& chi) {
  std::vector<std::size_t> sizes;
  for (const auto& [c, count] : color_histogram(chi)) sizes.push_back(count);
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

bool is_equality_compatible(const TupleColoring& chi) {
  const TupleSpace space = chi.space();
  std::vector<std::vector<std::uint8_t>> pattern_of(id_bound(chi));
  std::vector<bool> seen(id_bound(chi), false);
  Tuple t(chi.k);
  for (std::size_t i = 0; i < space.size(); ++i) {
    space.decode(i, t);
    auto p = equality_pattern(t);
    Color c = chi.colors[i];
    if (!seen[c]) {
      seen[c] = true;
      pattern_of[c] = std::move(p);
    } else if (pattern_of[c] != p) {
      return false;
    }
  }
  return true;
}

bool is_shufflable(const TupleColoring& chi) {
  const TupleSpace space = chi.space();
  const int k = chi.k;
  std::vector<int> pi(k, 0);
  constexpr Color unset = ~Color{0};
  std::vector<Color> target(id_bound(chi));
  Tuple t(k), s(k);
  while (true) {
    std::fill(target.begin(), target.end(), unset);
    for (std::size_t i = 0; i < space.size(); ++i) {
      space.decode(i, t);
      for (int j = 0; j < k; ++j) s[j] = t[pi[j]];
      Color img = chi.colors[space.index(s)];
      Color& slot = target[chi.colors[i]];
      if (slot == unset)
        slot = img;
      else if (slot != img)
        return false;
    }
    int j = k - 1;
    while (j >= 0 && ++pi[j] == k) pi[j--] = 0;
    if (j < 0) break;
  }
  return true;
}

}  // namespace wlr
