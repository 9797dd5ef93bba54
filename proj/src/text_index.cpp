#include "bdp/text_index.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace bdp {

namespace detail {

namespace {

constexpr Pos kEmpty = static_cast<Pos>(-1);

std::vector<Pos> suffix_array_naive(const std::vector<Pos>& s) {
    std::vector<Pos> sa(s.size());
    for (Pos i = 0; i < sa.size(); ++i) sa[i] = i;
    std::sort(sa.begin(), sa.end(), [&](Pos a, Pos b) {
        return std::lexicographical_compare(s.begin() + a, s.end(), s.begin() + b, s.end());
    });
    return sa;
}

}  // namespace

// Induced sorting (SA-IS). The end of the string acts as a virtual sentinel
// smaller than every symbol.
std::vector<Pos> suffix_array(const std::vector<Pos>& s, Pos upper) {
    const Pos n = s.size();
    if (n < 8) return suffix_array_naive(s);

    std::vector<Pos> sa(n);
    std::vector<bool> is_s(n, false);
    for (Pos i = n - 1; i-- > 0;) {
        is_s[i] = s[i] == s[i + 1] ? is_s[i + 1] : s[i] < s[i + 1];
    }

    // sum_l[c]: first slot of bucket c; sum_s[c]: first S-type slot of bucket c.
    std::vector<Pos> sum_l(upper + 2, 0), sum_s(upper + 2, 0);
    for (Pos i = 0; i < n; ++i) {
        if (!is_s[i]) {
            ++sum_s[s[i]];
        } else {
            ++sum_l[s[i] + 1];
        }
    }
    for (Pos c = 0; c <= upper; ++c) {
        sum_s[c] += sum_l[c];
        if (c < upper) sum_l[c + 1] += sum_s[c];
    }

    std::vector<Pos> buf(upper + 2);
    auto induce = [&](const std::vector<Pos>& lms) {
        std::fill(sa.begin(), sa.end(), kEmpty);
        std::copy(sum_s.begin(), sum_s.end(), buf.begin());
        for (Pos d : lms) {
            if (d == n) continue;
            sa[buf[s[d]]++] = d;
        }
        std::copy(sum_l.begin(), sum_l.end(), buf.begin());
        sa[buf[s[n - 1]]++] = n - 1;
        for (Pos i = 0; i < n; ++i) {
            Pos v = sa[i];
            if (v != kEmpty && v >= 1 && !is_s[v - 1]) sa[buf[s[v - 1]]++] = v - 1;
        }
        std::copy(sum_l.begin(), sum_l.end(), buf.begin());
        for (Pos i = n; i-- > 0;) {
            Pos v = sa[i];
            if (v != kEmpty && v >= 1 && is_s[v - 1]) sa[--buf[s[v - 1] + 1]] = v - 1;
        }
    };

    std::vector<Pos> lms_map(n + 1, kEmpty);
    std::vector<Pos> lms;
    for (Pos i = 1; i < n; ++i) {
        if (!is_s[i - 1] && is_s[i]) {
            lms_map[i] = lms.size();
            lms.push_back(i);
        }
    }
    const Pos m = lms.size();

    induce(lms);

    if (m > 0) {
        std::vector<Pos> sorted_lms;
        sorted_lms.reserve(m);
        for (Pos v : sa) {
            if (lms_map[v] != kEmpty) sorted_lms.push_back(v);
        }
        std::vector<Pos> reduced(m);
        Pos reduced_upper = 0;
        reduced[lms_map[sorted_lms[0]]] = 0;
        for (Pos k = 1; k < m; ++k) {
            Pos l = sorted_lms[k - 1];
            Pos r = sorted_lms[k];
            Pos end_l = lms_map[l] + 1 < m ? lms[lms_map[l] + 1] : n;
            Pos end_r = lms_map[r] + 1 < m ? lms[lms_map[r] + 1] : n;
            bool same = true;
            if (end_l - l != end_r - r) {
                same = false;
            } else {
                while (l < end_l && s[l] == s[r]) {
                    ++l;
                    ++r;
                }
                if (l == n || s[l] != s[r]) same = false;
            }
            if (!same) ++reduced_upper;
            reduced[lms_map[sorted_lms[k]]] = reduced_upper;
        }

        std::vector<Pos> reduced_sa = suffix_array(reduced, reduced_upper);
        for (Pos k = 0; k < m; ++k) sorted_lms[k] = lms[reduced_sa[k]];
        induce(sorted_lms);
    }
    return sa;
}

}  // namespace detail

namespace {

// Kasai et al.: lcp[r] = lcp(sa[r-1], sa[r]) for r >= 1, lcp[0] = 0. All 0-based.
std::vector<Pos> kasai(std::span<const std::uint8_t> t, const std::vector<Pos>& sa,
                       const std::vector<Pos>& isa) {
    const Pos n = t.size();
    std::vector<Pos> lcp(n, 0);
    Pos h = 0;
    for (Pos i = 0; i < n; ++i) {
        if (isa[i] == 0) {
            h = 0;
            continue;
        }
        Pos j = sa[isa[i] - 1];
        while (i + h < n && j + h < n && t[i + h] == t[j + h]) ++h;
        lcp[isa[i]] = h;
        if (h > 0) --h;
    }
    return lcp;
}

// For every position p, looks at the nearest rank on each side of isa[p] whose
// suffix start is smaller (prefer_larger = false) or larger (prefer_larger =
// true) than p, and keeps the longer of the two lcps. Ties go to the smaller
// rank. One stack sweep over the ranks; each stack entry carries the lcp with
// the entry below it.
FactorArray nearest_factor(const std::vector<Pos>& sa, const std::vector<Pos>& lcp,
                           bool prefer_larger) {
    const Pos n = sa.size();
    FactorArray out{std::vector<Pos>(n, 0), std::vector<Pos>(n, 0)};
    std::vector<Pos> before_len(n, 0), before_src(n, 0);
    std::vector<Pos> after_len(n, 0), after_src(n, 0);

    struct Entry {
        Pos pos;
        Pos lcp_below;
    };
    std::vector<Entry> stack;
    stack.reserve(n);
    auto beats = [prefer_larger](Pos top, Pos cur) { return prefer_larger ? top < cur : top > cur; };

    for (Pos r = 0; r < n; ++r) {
        const Pos cur = sa[r];
        Pos h = r == 0 ? 0 : lcp[r];
        while (!stack.empty() && beats(stack.back().pos, cur)) {
            const Entry top = stack.back();
            stack.pop_back();
            after_len[top.pos] = h;
            after_src[top.pos] = cur + 1;
            h = std::min(h, top.lcp_below);
        }
        if (!stack.empty()) {
            before_len[cur] = h;
            before_src[cur] = stack.back().pos + 1;
        } else {
            h = 0;
        }
        stack.push_back({cur, h});
    }

    for (Pos p = 0; p < n; ++p) {
        if (before_len[p] >= after_len[p]) {
            out.length[p] = before_len[p];
            out.source[p] = before_len[p] > 0 ? before_src[p] : 0;
        } else {
            out.length[p] = after_len[p];
            out.source[p] = after_src[p];
        }
    }
    return out;
}

struct Arrays {
    std::vector<Pos> sa;
    std::vector<Pos> isa;
    std::vector<Pos> lcp;
};

Arrays build_arrays(std::span<const std::uint8_t> t) {
    Arrays a;
    std::vector<Pos> s(t.begin(), t.end());
    a.sa = detail::suffix_array(s, 255);
    a.isa.assign(t.size(), 0);
    for (Pos r = 0; r < a.sa.size(); ++r) a.isa[a.sa[r]] = r;
    a.lcp = kasai(t, a.sa, a.isa);
    return a;
}

}  // namespace

SuffixNeighborhood::SuffixNeighborhood(const TextIndex& index, Pos k) : index_(&index), origin_(k) {
    if (k < 1 || k > index.size()) {
        throw std::out_of_range("neighborhood origin " + std::to_string(k) + " outside 1.." +
                                std::to_string(index.size()));
    }
}

std::optional<Neighbor> SuffixNeighborhood::next() {
    const Pos n = index_->size();
    const auto& sa = index_->sa_;
    const auto& lcp = index_->lcp_;
    if (!started_) {
        started_ = true;
        lo_ = hi_ = index_->isa_[origin_ - 1];
        p_ = q_ = n - origin_ + 1;
        return Neighbor{origin_, p_};
    }
    const bool has_left = lo_ > 0;
    const bool has_right = hi_ + 1 < n;
    if (!has_left && !has_right) return std::nullopt;

    const Pos left = has_left ? std::min(lcp[lo_], p_) : 0;
    const Pos right = has_right ? std::min(lcp[hi_ + 1], q_) : 0;
    if (has_left && (!has_right || left >= right)) {
        --lo_;
        p_ = left;
        return Neighbor{sa[lo_] + 1, left};
    }
    ++hi_;
    q_ = right;
    return Neighbor{sa[hi_] + 1, right};
}

TextIndex::TextIndex(Text text) : text_(std::move(text)) {
    Arrays a = build_arrays(text_.bytes());
    sa_ = std::move(a.sa);
    isa_ = std::move(a.isa);
    lcp_ = std::move(a.lcp);
    FactorArray prev = nearest_factor(sa_, lcp_, false);
    lpf_ = std::move(prev.length);
    lpf_src_ = std::move(prev.source);
}

Pos TextIndex::lcp_of(Pos i, Pos j) const {
    const Pos n = size();
    if (i < 1 || i > n || j < 1 || j > n) {
        throw std::out_of_range("lcp_of(" + std::to_string(i) + ", " + std::to_string(j) +
                                ") outside 1.." + std::to_string(n));
    }
    auto t = text_.bytes();
    Pos a = i - 1;
    Pos b = j - 1;
    Pos h = 0;
    while (a + h < n && b + h < n && t[a + h] == t[b + h]) ++h;
    return h;
}

std::vector<Pos> TextIndex::sa_array() const {
    std::vector<Pos> out(sa_.size());
    for (Pos r = 0; r < sa_.size(); ++r) out[r] = sa_[r] + 1;
    return out;
}

std::vector<Pos> TextIndex::isa_array() const {
    std::vector<Pos> out(isa_.size());
    for (Pos p = 0; p < isa_.size(); ++p) out[p] = isa_[p] + 1;
    return out;
}

FactorArray longest_next_factors(const Text& text) {
    Arrays a = build_arrays(text.bytes());
    return nearest_factor(a.sa, a.lcp, true);
}

FactorArray longest_previous_factors_ending(const Text& text) {
    // LPF'[x] of T is LNF[n - x + 1] of the reversed text; an occurrence
    // starting at y in the reversal ends at n - y + 1 in T.
    const Pos n = text.size();
    FactorArray rev = longest_next_factors(text.reversed());
    FactorArray out{std::vector<Pos>(n, 0), std::vector<Pos>(n, 0)};
    for (Pos x = 1; x <= n; ++x) {
        const Pos y = n - x + 1;
        out.length[x - 1] = rev.length[y - 1];
        out.source[x - 1] = rev.length[y - 1] > 0 ? n - rev.source[y - 1] + 1 : 0;
    }
    return out;
}

std::vector<Pos> lnf(const Text& text) { return longest_next_factors(text).length; }

std::vector<Pos> lpf_prime(const Text& text) { return longest_previous_factors_ending(text).length; }

}  // namespace bdp
