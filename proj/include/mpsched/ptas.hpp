#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <tuple>
#include <vector>

#include "instance.hpp"

namespace mpsched {

// Machines tracked up to capacity-equivalence: rounded capacity -> count.
using CapCounts = std::map<long long, int>;

inline long long cap_total(const CapCounts& c) {
    long long t = 0;
    for (auto& [v, n] : c) t += v * n;
    return t;
}
inline int cap_count(const CapCounts& c) {
    int t = 0;
    for (auto& [v, n] : c) t += n;
    return t;
}
inline void cap_add(CapCounts& c, long long v, int n = 1) {
    if (n != 0) c[v] += n;
}
inline void cap_sub(CapCounts& c, long long v, int n = 1) {
    auto it = c.find(v);
    MPSCHED_ASSERT(it != c.end() && it->second >= n, "capacity multiset underflow");
    it->second -= n;
    if (it->second == 0) c.erase(it);
}
inline CapCounts cap_union(CapCounts a, const CapCounts& b) {
    for (auto& [v, n] : b) a[v] += n;
    return a;
}

enum class MachineClass { Tiny, Small, Average, Large };

// Precision-dependent machinery: the capacity ladder floor((1+eps)^i), the
// range split of parts, and the machine classification per range.
class PtasParams {
  public:
    explicit PtasParams(Rational eps) {
        if (sgn(eps) <= 0) throw BadArgument("epsilon must be positive");
        eps_ = std::min(eps, Rational(1, 2));
        inv_eps_ = 1 / eps_;
        inv_eps2_ = inv_eps_ * inv_eps_;
        one_plus_ = 1 + eps_;
        pow_.push_back(Rational(1));
        ladder_.push_back(1);
        // l_min: least i with (1+eps)^i >= eps^-3, plus one
        Rational inv_eps3 = inv_eps2_ * inv_eps_;
        int i = 0;
        while (power(i) < inv_eps3) ++i;
        l_min_ = i + 1;
        // d_tiny: least i with (1+eps)^i >= eps^-2
        i = 0;
        while (power(i) < inv_eps2_) ++i;
        d_tiny_ = i;
        // d_average: greatest i with (1+eps)^i <= eps^-1, plus one
        i = 0;
        while (power(i + 1) <= inv_eps_) ++i;
        d_average_ = i + 1;
    }

    const Rational& eps() const { return eps_; }
    const Rational& inv_eps() const { return inv_eps_; }
    const Rational& inv_eps2() const { return inv_eps2_; }
    int l_min() const { return l_min_; }
    int d_tiny() const { return d_tiny_; }
    int d_average() const { return d_average_; }

    // floor((1+eps)^i); consecutive entries may repeat for small i
    long long ladder(int i) const {
        while (static_cast<int>(ladder_.size()) <= i)
            ladder_.push_back(rat_floor_ll(power(static_cast<int>(ladder_.size()))));
        return ladder_[i];
    }

    // least ladder value >= c (0 stays 0)
    long long rounded_capacity(long long c) const {
        if (c <= 0) return 0;
        for (int i = 0;; ++i)
            if (ladder(i) >= c) return ladder(i);
    }

    // the unique l with floor((1+eps)^l) <= size < floor((1+eps)^{l+1})
    int range_of(long long size) const {
        MPSCHED_ASSERT(size >= 1, "part sizes are positive");
        int i = 0;
        while (ladder(i + 1) <= size) ++i;
        return i;
    }

    Rational small_threshold(int l) const { return eps_ * power(l); }

    MachineClass classify(long long c_star, int l) const {
        Rational c = rat(c_star);
        if (c < inv_eps2_) return MachineClass::Tiny;
        if (c < small_threshold(l)) return MachineClass::Small;
        if (c_star < ladder(l + 1)) return MachineClass::Average;
        return MachineClass::Large;
    }

    const Rational& power(int i) const {
        while (static_cast<int>(pow_.size()) <= i) {
            Rational next = pow_.back() * one_plus_;
            pow_.push_back(std::move(next));
        }
        return pow_[i];
    }

  private:
    Rational eps_, inv_eps_, inv_eps2_, one_plus_;
    int l_min_ = 0, d_tiny_ = 0, d_average_ = 0;
    mutable std::vector<Rational> pow_;
    mutable std::vector<long long> ladder_;
};

inline long long rounded_capacity(long long c, const Rational& eps) {
    return PtasParams(eps).rounded_capacity(c);
}
inline MachineClass classify_machine(long long c_star, int l, const Rational& eps) {
    return PtasParams(eps).classify(c_star, l);
}

// ---------------------------------------------------------------------------
// covers and coverings

enum class CoverKind { None, Exact, RelativelyAlmostExact, AbsolutelyAlmostExact };

// exact: total >= size; relatively almost exact: total >= (1-eps)*size and
// every member > 1/eps; absolutely almost exact: total >= size - 1/eps and
// some member > 1/eps^2.
inline CoverKind cover_kind(const CapCounts& cover, long long size, const PtasParams& P) {
    long long total = cap_total(cover);
    if (total >= size) return CoverKind::Exact;
    if (!cover.empty()) {
        Rational t = rat(total);
        if (t >= (1 - P.eps()) * rat(size) && rat(cover.begin()->first) > P.inv_eps())
            return CoverKind::RelativelyAlmostExact;
        if (t >= rat(size) - P.inv_eps() && rat(cover.rbegin()->first) > P.inv_eps2())
            return CoverKind::AbsolutelyAlmostExact;
    }
    return CoverKind::None;
}

struct PartCover {
    int part_id;
    long long part_size;
    CapCounts machines;
};
using CoverList = std::vector<PartCover>;

// Search state between ranges: unassigned machines up to capacity-equivalence
// plus the covering built so far.
struct StateVector {
    CapCounts exact_pool;    // tiny machines reserved for exact covers
    CapCounts slack_pool;    // tiny + small machines
    int n_small = 0;         // small machines inside slack_pool
    CapCounts average_pool;
    CapCounts large_pool;
    CoverList covering;

    using Key = std::tuple<CapCounts, int, CapCounts, CapCounts>;
    Key key() const { return {exact_pool, n_small, average_pool, large_pool}; }
    long long slack_capacity() const { return cap_total(slack_pool); }
};

// One vector per (exact, n_small, average, large) key, keeping the largest
// slack capacity; ties keep the first seen.
inline std::vector<StateVector> trim_state_vectors(const std::vector<StateVector>& candidates) {
    std::map<StateVector::Key, std::size_t> keep;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        auto [it, inserted] = keep.try_emplace(candidates[i].key(), i);
        if (!inserted && candidates[i].slack_capacity() > candidates[it->second].slack_capacity())
            it->second = i;
    }
    std::vector<StateVector> out;
    out.reserve(keep.size());
    for (auto& [_, i] : keep) out.push_back(candidates[i]);
    return out;
}

namespace ptas_detail {

// Enumerate minimal covers of `size` from the classed pool: count vectors with
// total >= size where no used machine can be dropped. Zero-capacity machines
// never appear (dropping one would keep the cover exact).
inline void minimal_covers(const CapCounts& pool, long long size,
                           const std::function<void(const CapCounts&)>& emit) {
    std::vector<std::pair<long long, int>> classes(pool.begin(), pool.end());
    std::reverse(classes.begin(), classes.end());  // big capacities first
    CapCounts chosen;
    auto rec = [&](auto&& self, std::size_t idx, long long total) -> void {
        if (total >= size) {
            for (auto& [v, n] : chosen)
                if (total - v >= size) return;  // not minimal
            emit(chosen);
            return;
        }
        if (idx == classes.size()) return;
        auto [v, avail] = classes[idx];
        if (v <= 0) return;  // zero capacities cannot help
        long long rest = 0;
        for (std::size_t i = idx; i < classes.size(); ++i)
            rest += classes[i].first * classes[i].second;
        if (total + rest < size) return;
        for (int take = 0; take <= avail; ++take) {
            if (take) cap_add(chosen, v);
            if (total + static_cast<long long>(take) * v >= size) {
                self(self, idx + 1, total + static_cast<long long>(take) * v);
                break;  // more copies of v would never be minimal
            }
            self(self, idx + 1, total + static_cast<long long>(take) * v);
        }
        if (chosen.count(v)) chosen.erase(v);
    };
    rec(rec, 0, 0);
}

// Greedy fill: fastest slack machines first, never pushing the running total
// over `budget`; zero capacities are skipped.
inline CapCounts greedy_fill(const CapCounts& slack, long long budget) {
    CapCounts fill;
    long long total = 0;
    for (auto it = slack.rbegin(); it != slack.rend(); ++it) {
        auto [v, avail] = *it;
        if (v <= 0) break;
        long long fits = (budget - total) / v;
        int take = static_cast<int>(std::min<long long>(avail, std::max<long long>(fits, 0)));
        if (take > 0) {
            cap_add(fill, v, take);
            total += static_cast<long long>(take) * v;
        }
    }
    return fill;
}

struct CoverSearchState {
    CapCounts exact, slack, msu, average, large;
    CoverList covers;

    using Key = std::tuple<CapCounts, CapCounts, CapCounts, int>;
    Key key() const { return {exact, average, large, cap_count(msu)}; }
};

// Part-by-part search over one range: Case I exact tiny covers, Case II a
// single large machine, Case III average machines plus a greedy slack fill,
// Case IV a reserved small machine heading a slack fill. States trimmed per
// (exact, average, large, |msu|) keeping the largest slack capacity.
inline std::vector<CoverSearchState> cover_search(const CoverSearchState& start,
                                                  const std::vector<std::pair<int, long long>>& parts,
                                                  const PtasParams& P, bool trim) {
    std::vector<CoverSearchState> cur{start};
    for (auto& [part_id, size] : parts) {
        std::vector<CoverSearchState> next;
        auto push = [&](CoverSearchState&& st, CapCounts&& cover) {
            st.covers.push_back({part_id, size, std::move(cover)});
            next.push_back(std::move(st));
        };
        for (const CoverSearchState& s : cur) {
            // Case I: tiny exact cover from the reserved pool
            minimal_covers(s.exact, size, [&](const CapCounts& cover) {
                CoverSearchState st = s;
                for (auto& [v, n] : cover) cap_sub(st.exact, v, n);
                push(std::move(st), CapCounts(cover));
            });
            // Case II: the slowest large machine alone
            if (!s.large.empty()) {
                long long v = s.large.begin()->first;
                MPSCHED_ASSERT(v >= size, "large machine smaller than a part of its range");
                CoverSearchState st = s;
                cap_sub(st.large, v);
                push(std::move(st), CapCounts{{v, 1}});
            }
            // Case III: nonempty average subset + slack fill
            {
                std::vector<std::pair<long long, int>> avg(s.average.begin(), s.average.end());
                CapCounts chosen;
                auto rec = [&](auto&& self, std::size_t idx, long long total) -> void {
                    if (idx == avg.size()) {
                        if (chosen.empty()) return;
                        CapCounts fill = greedy_fill(s.slack, size - total);
                        CapCounts cover = cap_union(chosen, fill);
                        if (cover_kind(cover, size, P) == CoverKind::None) return;
                        CoverSearchState st = s;
                        for (auto& [v, n] : chosen) cap_sub(st.average, v, n);
                        for (auto& [v, n] : fill) cap_sub(st.slack, v, n);
                        push(std::move(st), std::move(cover));
                        return;
                    }
                    auto [v, avail] = avg[idx];
                    for (int take = 0; take <= avail; ++take) {
                        if (take) cap_add(chosen, v);
                        self(self, idx + 1, total + static_cast<long long>(take) * v);
                    }
                    if (chosen.count(v)) chosen.erase(v);
                };
                rec(rec, 0, 0);
            }
            // Case IV: fastest reserved small machine + slack fill
            if (!s.msu.empty()) {
                long long head = s.msu.rbegin()->first;
                CapCounts fill = greedy_fill(s.slack, size - head);
                CapCounts cover = fill;
                cap_add(cover, head);
                if (cover_kind(cover, size, P) != CoverKind::None) {
                    CoverSearchState st = s;
                    cap_sub(st.msu, head);
                    for (auto& [v, n] : fill) cap_sub(st.slack, v, n);
                    push(std::move(st), std::move(cover));
                }
            }
        }
        if (trim) {
            std::map<CoverSearchState::Key, std::size_t> keep;
            for (std::size_t i = 0; i < next.size(); ++i) {
                auto [it, inserted] = keep.try_emplace(next[i].key(), i);
                if (!inserted && cap_total(next[i].slack) > cap_total(next[it->second].slack))
                    it->second = i;
            }
            std::vector<CoverSearchState> trimmed;
            trimmed.reserve(keep.size());
            for (auto& [_, i] : keep) trimmed.push_back(std::move(next[i]));
            cur = std::move(trimmed);
        } else {
            std::map<std::tuple<CapCounts, CapCounts, CapCounts, CapCounts, CapCounts>, std::size_t>
                keep;
            for (std::size_t i = 0; i < next.size(); ++i)
                keep.try_emplace({next[i].exact, next[i].slack, next[i].msu, next[i].average,
                                  next[i].large},
                                 i);
            std::vector<CoverSearchState> dedup;
            dedup.reserve(keep.size());
            for (auto& [_, i] : keep) dedup.push_back(std::move(next[i]));
            cur = std::move(dedup);
        }
        if (cur.empty()) break;
    }
    return cur;
}

// take the n largest-capacity machines out of `pool`
inline CapCounts extract_largest(CapCounts& pool, int n) {
    CapCounts out;
    while (n > 0) {
        MPSCHED_ASSERT(!pool.empty(), "not enough machines to extract");
        auto it = std::prev(pool.end());
        int take = std::min(n, it->second);
        cap_add(out, it->first, take);
        cap_sub(pool, it->first, take);
        n -= take;
    }
    return out;
}

}  // namespace ptas_detail

struct CheckCoveringResult {
    CapCounts residual_slack;
    CoverList covering;
};

// Either proves there is no exact covering of the range's parts that uses the
// given resources exactly (all of exact/average/large consumed, n_msu parts
// headed by reserved small machines, slack spending bounded by slack_pool),
// or returns a (1-eps)-nice covering together with the surviving slack.
inline std::optional<CheckCoveringResult> check_covering(
    const CapCounts& exact_pool, const CapCounts& slack_pool, int n_msu,
    const CapCounts& average_pool, const CapCounts& large_pool,
    std::vector<std::pair<int, long long>> parts, int l, const PtasParams& P) {
    std::sort(parts.begin(), parts.end(),
              [](auto& a, auto& b) { return a.second < b.second || (a.second == b.second && a.first < b.first); });
    ptas_detail::CoverSearchState start;
    start.exact = exact_pool;
    start.slack = slack_pool;
    start.average = average_pool;
    start.large = large_pool;
    {
        int smalls = 0;
        for (auto& [v, n] : slack_pool)
            if (P.classify(v, l) == MachineClass::Small) smalls += n;
        MPSCHED_ASSERT(smalls >= n_msu, "slack pool lacks the reserved small machines");
    }
    start.msu = ptas_detail::extract_largest(start.slack, n_msu);

    auto finals = ptas_detail::cover_search(start, parts, P, /*trim=*/true);
    const ptas_detail::CoverSearchState* best = nullptr;
    for (const auto& st : finals) {
        if (!st.exact.empty() || !st.msu.empty() || !st.average.empty() || !st.large.empty())
            continue;
        if (!best || cap_total(st.slack) > cap_total(best->slack)) best = &st;
    }
    if (!best) return std::nullopt;
    return CheckCoveringResult{best->slack, best->covers};
}

// Rebucket a state vector for a later range: larger ranges only demote
// machines (large -> average -> small), never promote, and the reserved exact
// pool never moves.
inline StateVector reclassify_state_vector(StateVector sv, int l, const PtasParams& P) {
    CapCounts avg = std::move(sv.average_pool), large = std::move(sv.large_pool);
    sv.average_pool.clear();
    sv.large_pool.clear();
    auto place = [&](long long v, int n) {
        switch (P.classify(v, l)) {
            case MachineClass::Tiny:
            case MachineClass::Small:
                cap_add(sv.slack_pool, v, n);
                break;
            case MachineClass::Average:
                cap_add(sv.average_pool, v, n);
                break;
            case MachineClass::Large:
                cap_add(sv.large_pool, v, n);
                break;
        }
    };
    for (auto& [v, n] : avg) place(v, n);
    for (auto& [v, n] : large) place(v, n);
    sv.n_small = 0;
    for (auto& [v, n] : sv.slack_pool)
        if (P.classify(v, l) == MachineClass::Small) sv.n_small += n;
    return sv;
}

// All candidate successors of one state vector after covering range P_l.
// Consumed exact/average/large machines play the role of the guessed subsets;
// n_msu (parts of this range headed by a reserved small machine) and n_mst
// (small machines reserved for later ranges) are enumerated outright.
inline std::vector<StateVector> generate_candidate_state_vectors(
    const StateVector& sv, const std::vector<std::pair<int, long long>>& parts, int l,
    int l_next, const PtasParams& P, bool trim = true, int max_mst = -1) {
    std::vector<StateVector> out;
    std::vector<std::pair<int, long long>> sorted_parts(parts);
    std::sort(sorted_parts.begin(), sorted_parts.end(),
              [](auto& a, auto& b) { return a.second < b.second || (a.second == b.second && a.first < b.first); });
    // a reserved head machine covers exactly one part of this range
    int msu_cap = std::min<int>(sv.n_small, static_cast<int>(parts.size()));
    if (max_mst < 0) max_mst = sv.n_small;
    for (int n_mst = 0; n_mst <= std::min(sv.n_small, max_mst); ++n_mst) {
        for (int n_msu = 0; n_msu <= msu_cap && n_msu + n_mst <= sv.n_small; ++n_msu) {
            CapCounts slack = sv.slack_pool;
            CapCounts mst = ptas_detail::extract_largest(slack, n_mst);
            ptas_detail::CoverSearchState start;
            start.exact = sv.exact_pool;
            start.average = sv.average_pool;
            start.large = sv.large_pool;
            start.msu = ptas_detail::extract_largest(slack, n_msu);
            for (auto& [v, cnt] : start.msu)
                MPSCHED_ASSERT(P.classify(v, l) == MachineClass::Small,
                               "reserved cover heads must be small machines");
            start.slack = std::move(slack);
            auto finals = ptas_detail::cover_search(start, sorted_parts, P, trim);
            for (auto& st : finals) {
                if (!st.msu.empty()) continue;  // fewer slack-headed parts than guessed
                StateVector cand;
                cand.exact_pool = std::move(st.exact);
                cand.slack_pool = cap_union(std::move(st.slack), mst);
                cand.average_pool = std::move(st.average);
                cand.large_pool = std::move(st.large);
                cand.covering = sv.covering;
                cand.covering.insert(cand.covering.end(), st.covers.begin(), st.covers.end());
                out.push_back(reclassify_state_vector(std::move(cand), l_next, P));
            }
        }
    }
    return trim ? trim_state_vectors(out) : out;
}

// ---------------------------------------------------------------------------
// small parts and slow machines (the seed of the range loop)

// Exact coverings of all parts below the first interesting range, by subsets
// of slow machines or by single fast machines consumed slowest-first; then
// every split of leftover tiny machines into the reserved exact pool.
// Returns the trimmed vector set for range l_min+1; empty means no exact
// covering of the small parts exists (the deadline guess is rejected).
inline std::vector<StateVector> find_sv_lmin(std::vector<std::pair<int, long long>> parts_below,
                                             const std::vector<long long>& c_star,
                                             const PtasParams& P, bool trim = true) {
    std::sort(parts_below.begin(), parts_below.end(),
              [](auto& a, auto& b) { return a.second < b.second || (a.second == b.second && a.first < b.first); });
    long long slow_cutoff = P.ladder(P.l_min());
    CapCounts slow;
    std::vector<long long> fast;  // ascending capacity
    for (long long v : c_star) {
        if (v <= slow_cutoff)
            cap_add(slow, v);
        else
            fast.push_back(v);
    }
    std::sort(fast.begin(), fast.end());

    struct PreState {
        CapCounts slow_rem;
        int fast_used;
        CoverList covers;
    };
    std::vector<PreState> cur{{slow, 0, {}}};
    for (auto& [part_id, size] : parts_below) {
        std::vector<PreState> next;
        for (const PreState& s : cur) {
            ptas_detail::minimal_covers(s.slow_rem, size, [&](const CapCounts& cover) {
                PreState st = s;
                for (auto& [v, n] : cover) cap_sub(st.slow_rem, v, n);
                st.covers.push_back({part_id, size, cover});
                next.push_back(std::move(st));
            });
            if (s.fast_used < static_cast<int>(fast.size())) {
                long long v = fast[s.fast_used];
                MPSCHED_ASSERT(v >= size, "fast machine smaller than a small part");
                PreState st = s;
                ++st.fast_used;
                st.covers.push_back({part_id, size, CapCounts{{v, 1}}});
                next.push_back(std::move(st));
            }
        }
        // one state per residual machine multiset
        std::map<std::pair<CapCounts, int>, std::size_t> keep;
        for (std::size_t i = 0; i < next.size(); ++i)
            keep.try_emplace({next[i].slow_rem, next[i].fast_used}, i);
        std::vector<PreState> dedup;
        dedup.reserve(keep.size());
        for (auto& [_, i] : keep) dedup.push_back(std::move(next[i]));
        cur = std::move(dedup);
        if (cur.empty()) return {};
    }

    int l_start = P.l_min() + 1;
    std::vector<StateVector> out;
    for (const PreState& s : cur) {
        // residual machines: slow leftovers + unused fast machines
        CapCounts residual = s.slow_rem;
        for (std::size_t i = s.fast_used; i < fast.size(); ++i) cap_add(residual, fast[i]);
        // enumerate exact-pool splits over tiny classes
        std::vector<std::pair<long long, int>> tiny_classes;
        for (auto& [v, n] : residual)
            if (P.classify(v, l_start) == MachineClass::Tiny) tiny_classes.emplace_back(v, n);
        CapCounts exact_pool;
        auto emit = [&] {
            StateVector sv;
            sv.exact_pool = exact_pool;
            sv.covering = s.covers;
            for (auto& [v, n] : residual) {
                int left = n - (exact_pool.count(v) ? exact_pool.at(v) : 0);
                if (left <= 0) continue;
                switch (P.classify(v, l_start)) {
                    case MachineClass::Tiny:
                    case MachineClass::Small:
                        cap_add(sv.slack_pool, v, left);
                        if (P.classify(v, l_start) == MachineClass::Small) sv.n_small += left;
                        break;
                    case MachineClass::Average:
                        cap_add(sv.average_pool, v, left);
                        break;
                    case MachineClass::Large:
                        cap_add(sv.large_pool, v, left);
                        break;
                }
            }
            out.push_back(std::move(sv));
        };
        auto rec = [&](auto&& self, std::size_t idx) -> void {
            if (idx == tiny_classes.size()) {
                emit();
                return;
            }
            auto [v, avail] = tiny_classes[idx];
            for (int take = 0; take <= avail; ++take) {
                if (take) cap_add(exact_pool, v, 1);
                self(self, idx + 1);
            }
            if (exact_pool.count(v)) exact_pool.erase(v);
        };
        rec(rec, 0);
    }
    return trim ? trim_state_vectors(out) : out;
}

// ---------------------------------------------------------------------------
// covering -> schedule

// Scale factor (1+eps)*(1/(1-eps)+eps): under it every nice cover becomes an
// exact cover of real capacities, and it stays below 1+7*eps for eps <= 1/2.
inline Rational nice_cover_scale(const Rational& eps) {
    return (1 + eps) * (1 / (1 - eps) + eps);
}

// Turn a (1-eps)-nice covering into a schedule: machines are materialized per
// rounded-capacity class and every machine m in a cover receives up to
// floor(c(m) * scale) unit jobs of its part.
inline Schedule nice_covering_to_schedule(const CoverList& covering, const CapacityFn& caps,
                                          const std::vector<long long>& c_star,
                                          const Rational& eps, const Rational& deadline,
                                          const Instance& ins,
                                          const std::vector<int>& machine_ids) {
    PtasParams P(eps);
    Rational scale = nice_cover_scale(P.eps());
    Rational inner_scale = 1 / (1 - P.eps()) + P.eps();

    std::map<long long, std::vector<int>> pools;  // c* value -> positions into machine_ids
    for (std::size_t i = 0; i < c_star.size(); ++i) pools[c_star[i]].push_back(static_cast<int>(i));
    std::map<long long, std::size_t> next_in_pool;

    Schedule sched;
    sched.machines.resize(ins.num_machines());
    std::vector<char> part_done(ins.num_partitions(), 0);
    for (const PartCover& cover : covering) {
        MPSCHED_ASSERT(cover.part_id >= 0 && cover.part_id < ins.num_partitions() &&
                           !part_done[cover.part_id],
                       "covering must name each part exactly once");
        part_done[cover.part_id] = 1;
        MPSCHED_ASSERT(cover_kind(cover.machines, cover.part_size, P) != CoverKind::None,
                       "cover fails the nice-cover predicate");
        // rescaled rounded capacities already cover the part exactly
        mpz_class rescaled = 0;
        for (auto& [v, n] : cover.machines) rescaled += rat_floor(rat(v) * inner_scale) * n;
        MPSCHED_ASSERT(rescaled >= to_mpz(cover.part_size),
                       "rescaled rounded capacities fail to cover the part");

        long long remaining = cover.part_size;
        int next_index = 0;
        for (auto it = cover.machines.rbegin(); it != cover.machines.rend(); ++it) {
            auto [v, n] = *it;
            for (int c = 0; c < n; ++c) {
                MPSCHED_ASSERT(next_in_pool[v] < pools[v].size(),
                               "covering uses more machines than exist");
                int pos = pools[v][next_in_pool[v]++];
                if (remaining <= 0) continue;
                long long quota = rat_floor_ll(rat(caps[pos]) * scale);
                long long take = std::min(remaining, quota);
                if (take <= 0) continue;
                MachineAssignment ma;
                ma.partition = cover.part_id;
                for (long long t = 0; t < take; ++t)
                    ma.jobs.push_back({cover.part_id, next_index++});
                sched.machines[machine_ids[pos]] = std::move(ma);
                remaining -= take;
            }
        }
        if (remaining > 0)
            throw InternalError("nice covering failed to place all jobs of part " +
                                std::to_string(cover.part_id));
    }
    for (int p = 0; p < ins.num_partitions(); ++p)
        MPSCHED_ASSERT(part_done[p], "covering misses a part");
    Rational bound = deadline * (1 + 7 * P.eps());
    MPSCHED_ASSERT(evaluate_cmax(ins, sched) <= bound, "converted schedule exceeds (1+7eps)T");
    return sched;
}

// ---------------------------------------------------------------------------
// driver

struct PtasOptions {
    bool linear_scan = false;
    bool disable_trim = false;  // exhaustive state sets, for cross-checking
};

struct PtasAttempt {
    bool accepted = false;
    CoverList covering;
    CapacityFn caps;
    std::vector<long long> c_star;
};

// One deadline guess: build capacities, seed with the small parts, then sweep
// the nonempty ranges generating and trimming state vectors.
inline PtasAttempt ptas_attempt(const std::vector<Rational>& speeds,
                                const std::vector<std::pair<int, long long>>& parts,
                                const Rational& T, const PtasParams& P,
                                const PtasOptions& opts = {}) {
    PtasAttempt at;
    at.caps = capacities_for_deadline(speeds, T);
    for (long long c : at.caps) {
        long long star = P.rounded_capacity(c);
        MPSCHED_ASSERT(c <= star && rat(star) <= (1 + P.eps()) * rat(c == 0 ? star : c),
                       "rounded capacity outside [c, (1+eps)c]");
        at.c_star.push_back(star);
    }

    long long below_cutoff = P.ladder(P.l_min() + 1);
    std::vector<std::pair<int, long long>> parts_below;
    std::map<int, std::vector<std::pair<int, long long>>> ranges;
    for (auto& [id, size] : parts) {
        if (size < below_cutoff)
            parts_below.emplace_back(id, size);
        else
            ranges[P.range_of(size)].emplace_back(id, size);
    }

    std::vector<StateVector> sv = find_sv_lmin(parts_below, at.c_star, P, !opts.disable_trim);
    int cur_l = P.l_min() + 1;
    for (auto it = ranges.begin(); it != ranges.end(); ++it) {
        if (sv.empty()) break;
        auto& [l, range_parts] = *it;
        if (l > cur_l) {
            for (auto& v : sv) v = reclassify_state_vector(std::move(v), l, P);
            if (!opts.disable_trim) sv = trim_state_vectors(sv);
        }
        // small machines reserved for later ranges are pointless at the last one
        bool last = std::next(it) == ranges.end();
        std::vector<StateVector> all;
        for (const StateVector& v : sv) {
            auto cands = generate_candidate_state_vectors(v, range_parts, l, l + 1, P,
                                                          !opts.disable_trim, last ? 0 : -1);
            all.insert(all.end(), std::make_move_iterator(cands.begin()),
                       std::make_move_iterator(cands.end()));
        }
        sv = opts.disable_trim ? std::move(all) : trim_state_vectors(all);
        cur_l = l + 1;
    }
    if (sv.empty()) return at;

    at.accepted = true;
    at.covering = sv.front().covering;
    if (!opts.disable_trim) {
        double bound = 1;
        int exp = P.d_tiny() + P.d_average() + 2;
        for (int i = 0; i < exp && bound < 1e18; ++i) bound *= speeds.size() + 1;
        MPSCHED_ASSERT(static_cast<double>(sv.size()) <= bound,
                       "trimmed state set exceeds its size bound");
    }
    return at;
}

// PTAS for unit jobs: binary search the candidate deadlines for the least
// accepted T, then convert its covering; the result is feasible with makespan
// at most (1+7*eps) times optimal.
inline std::pair<Schedule, Rational> ptas_solve(const Instance& ins, const Rational& eps,
                                                const PtasOptions& opts = {}) {
    if (!ins.unit_jobs) throw DomainMismatch("ptas_solve requires unit jobs");
    int k = ins.num_partitions(), m = ins.num_machines();
    if (m < k) throw Infeasible("fewer machines than partitions");
    PtasParams P(eps);

    int n = ins.num_jobs();
    std::vector<int> kept(m);
    std::iota(kept.begin(), kept.end(), 0);
    std::stable_sort(kept.begin(), kept.end(), [&](int a, int b) {
        return ins.machine_speeds[a] > ins.machine_speeds[b];
    });
    if (static_cast<int>(kept.size()) > n) kept.resize(n);
    std::vector<Rational> speeds;
    for (int i : kept) speeds.push_back(ins.machine_speeds[i]);

    std::vector<std::pair<int, long long>> parts;
    for (int p = 0; p < k; ++p) parts.emplace_back(p, static_cast<long long>(ins.partitions[p].size()));

    std::vector<Rational> cand;
    for (const Rational& s : speeds)
        for (int j = 1; j <= n; ++j) cand.push_back(Rational(j) / s);
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

    auto accept = [&](const Rational& T) { return ptas_attempt(speeds, parts, T, P, opts); };

    int found = -1;
    if (opts.linear_scan) {
        for (int i = 0; i < static_cast<int>(cand.size()); ++i)
            if (accept(cand[i]).accepted) {
                found = i;
                break;
            }
        MPSCHED_ASSERT(found >= 0, "no candidate deadline accepted");
    } else {
        int lo = 0, hi = static_cast<int>(cand.size()) - 1;
        MPSCHED_ASSERT(accept(cand[hi]).accepted, "largest candidate deadline must be accepted");
        while (lo < hi) {
            int mid = lo + (hi - lo) / 2;
            if (accept(cand[mid]).accepted)
                hi = mid;
            else
                lo = mid + 1;
        }
        found = lo;
        MPSCHED_ASSERT(accept(cand[found]).accepted, "binary search returned a rejected T");
        MPSCHED_ASSERT(found == 0 || !accept(cand[found - 1]).accepted,
                       "binary search predecessor unexpectedly accepted");
    }

    PtasAttempt at = accept(cand[found]);
    Schedule sched = nice_covering_to_schedule(at.covering, at.caps, at.c_star, P.eps(),
                                               cand[found], ins, kept);
    return {sched, evaluate_cmax(ins, sched)};
}

}  // namespace mpsched
