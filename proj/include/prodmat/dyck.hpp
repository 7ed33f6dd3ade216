#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "prodmat/polynomial.hpp"

namespace prodmat {

/// Largest semilength the exhaustive enumeration accepts.
inline constexpr unsigned kDyckEnumerationLimit = 14;

/// A balanced u/d word that never goes below the axis.
class DyckPath {
 public:
  DyckPath() = default;  // the empty path

  static DyckPath from_word(std::string_view word) {
    long long h = 0;
    for (char c : word) {
      if (c == 'u')
        ++h;
      else if (c == 'd')
        --h;
      else
        throw std::invalid_argument("path steps must be 'u' or 'd'");
      if (h < 0) throw std::invalid_argument("path dips below the axis");
    }
    if (h != 0) throw std::invalid_argument("path does not return to the axis");
    DyckPath p;
    p.word_ = std::string(word);
    return p;
  }

  const std::string& word() const { return word_; }
  unsigned semilength() const { return static_cast<unsigned>(word_.size() / 2); }

  friend bool operator==(const DyckPath&, const DyckPath&) = default;
  friend auto operator<=>(const DyckPath&, const DyckPath&) = default;

 private:
  std::string word_;
};

/// All statistics of a path gathered in one scan plus a matched-pair pass.
struct PathStats {
  std::vector<unsigned> rise_heights;       // per rise: run length - 1
  std::vector<unsigned> rise_indices;       // per rise: its growth index
  std::vector<unsigned> high_rise_heights;  // positive entries, in order
  std::vector<unsigned> peak_heights;       // height of the peak's u start
  std::map<unsigned, unsigned> high_peak_counts;  // height >= 1 -> count
  std::map<unsigned, unsigned> segment_counts;    // m -> s_m
  unsigned contacts = 0;
  unsigned excursions = 0;
  unsigned final_descent = 0;
  unsigned double_rises = 0;
  unsigned even_peaks = 0;
};

inline PathStats path_stats(const DyckPath& p) {
  const std::string& w = p.word();
  PathStats st;
  st.contacts = 1;  // the start point

  unsigned h = 0;
  unsigned run = 0;
  // Completed balanced blocks to the left of the scan point, summed along
  // the chain of open blocks. A rise's index is 1 + this count at its first
  // u step: the excursion count of the path when the growth process that
  // underlies the main matrix last extended that rise.
  unsigned blocks_left = 0;
  std::vector<unsigned> child_counts;  // matched-pair stack
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 'u') {
      if (i == 0 || w[i - 1] != 'u')
        st.rise_indices.push_back(1 + blocks_left);
      if (i + 1 < w.size() && w[i + 1] == 'u') ++st.double_rises;
      if (i + 1 < w.size() && w[i + 1] == 'd') {
        st.peak_heights.push_back(h);
        if (h % 2 == 0) ++st.even_peaks;
        if (h >= 1) ++st.high_peak_counts[h];
      }
      ++run;
      ++h;
      child_counts.push_back(0);
    } else {
      if (run > 0) {
        st.rise_heights.push_back(run - 1);
        if (run > 1) st.high_rise_heights.push_back(run - 1);
        run = 0;
      }
      --h;
      if (h == 0) ++st.contacts;
      unsigned m = child_counts.back();
      child_counts.pop_back();
      ++st.segment_counts[m];
      // the closed block replaces its own children in the open chain
      blocks_left += 1 - m;
      if (!child_counts.empty()) ++child_counts.back();
    }
  }
  st.excursions = st.contacts - 1;
  for (auto it = w.rbegin(); it != w.rend() && *it == 'd'; ++it)
    ++st.final_descent;
  return st;
}

/// Weight under the main rule: prod x[m]^{s_m} * prod y[j]^{h} over rises of
/// height h > 0, where j is the rise's growth index (see PathStats).
inline Polynomial omega_monomial(const DyckPath& p) {
  PathStats st = path_stats(p);
  Monomial m;
  for (const auto& [seg, count] : st.segment_counts)
    m = m.times(Monomial::var(VarId::x(seg), count));
  for (unsigned k = 0; k < st.rise_heights.size(); ++k)
    if (st.rise_heights[k] > 0)
      m = m.times(
          Monomial::var(VarId::y(st.rise_indices[k]), st.rise_heights[k]));
  return Polynomial::monomial(1, m);
}

/// prod y[h]^{number of high peaks of height h}.
inline Polynomial high_peak_monomial(const DyckPath& p) {
  PathStats st = path_stats(p);
  Monomial m;
  for (const auto& [height, count] : st.high_peak_counts)
    m = m.times(Monomial::var(VarId::y(height), count));
  return Polynomial::monomial(1, m);
}

/// The x -> 1 image of the main weight: prod y[j]^{h} over rises of height
/// h > 0 with growth index j.
inline Polynomial rise_height_monomial(const DyckPath& p) {
  PathStats st = path_stats(p);
  Monomial m;
  for (unsigned k = 0; k < st.rise_heights.size(); ++k)
    if (st.rise_heights[k] > 0)
      m = m.times(
          Monomial::var(VarId::y(st.rise_indices[k]), st.rise_heights[k]));
  return Polynomial::monomial(1, m);
}

namespace detail {

inline void enumerate_rec(std::string& buf, unsigned pos, unsigned ups_left,
                          unsigned height,
                          const std::function<void(const DyckPath&)>& visit) {
  if (pos == buf.size()) {
    DyckPath p = DyckPath::from_word(buf);
    visit(p);
    return;
  }
  // 'u' before 'd' gives lexicographic order with u < d
  if (ups_left > 0) {
    buf[pos] = 'u';
    enumerate_rec(buf, pos + 1, ups_left - 1, height + 1, visit);
  }
  if (height > 0) {
    buf[pos] = 'd';
    enumerate_rec(buf, pos + 1, ups_left, height - 1, visit);
  }
}

}  // namespace detail

/// Visits every path of semilength n in lexicographic order (u < d).
inline void enumerate_paths(unsigned n,
                            const std::function<void(const DyckPath&)>& visit) {
  if (n > kDyckEnumerationLimit)
    throw std::invalid_argument("semilength exceeds enumeration limit of " +
                                std::to_string(kDyckEnumerationLimit));
  std::string buf(2 * n, 'u');
  detail::enumerate_rec(buf, 0, n, 0, visit);
}

inline std::vector<DyckPath> enumerate_paths(unsigned n) {
  std::vector<DyckPath> out;
  enumerate_paths(n, [&out](const DyckPath& p) { out.push_back(p); });
  return out;
}

enum class PathStatistic { Omega, HighPeak, RiseHeight };

inline Polynomial path_monomial(const DyckPath& p, PathStatistic statistic) {
  switch (statistic) {
    case PathStatistic::Omega: return omega_monomial(p);
    case PathStatistic::HighPeak: return high_peak_monomial(p);
    default: return rise_height_monomial(p);
  }
}

/// Sum of the chosen weight monomial over all paths of semilength n.
inline Polynomial weighted_sum(unsigned n, PathStatistic statistic) {
  if (n == 0) throw std::invalid_argument("weighted sums need semilength >= 1");
  Polynomial out;
  enumerate_paths(n, [&out, statistic](const DyckPath& p) {
    out += path_monomial(p, statistic);
  });
  return out;
}

}  // namespace prodmat
