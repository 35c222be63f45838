// Copyright 2026 The qnnrobust Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qnnrobust/harness/split.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>

#include "qnnrobust/common/csv.hpp"
#include "qnnrobust/common/error.hpp"
#include "qnnrobust/common/rng.hpp"

namespace qnnrobust::harness {

namespace {

// Floors of n * ratio plus the leftover units handed to the largest
// fractional parts (ties to the earlier split).
std::array<std::size_t, 3> largest_remainder(std::size_t n, const std::array<double, 3> &ratios) {
    std::array<std::size_t, 3> out{};
    std::array<double, 3> frac{};
    std::size_t used = 0;
    for (int k = 0; k < 3; ++k) {
        const double exact = double(n) * ratios[k];
        out[k] = std::size_t(std::floor(exact + 1e-9));
        frac[k] = exact - double(out[k]);
        used += out[k];
    }
    std::array<int, 3> order{0, 1, 2};
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return frac[a] > frac[b]; });
    for (int i = 0; used < n; ++i, ++used) ++out[order[i % 3]];
    return out;
}

} // namespace

Split split_dataset(const DatasetManifest &m, const std::array<double, 3> &ratios, std::uint64_t seed) {
    // Units are groups when a row names one, otherwise single rows.
    std::map<std::string, std::vector<std::size_t>> group_rows;
    std::vector<std::vector<std::size_t>> units;
    for (std::size_t i = 0; i < m.rows.size(); ++i) {
        const auto &g = m.rows[i].group;
        if (g.empty()) units.push_back({i});
        else group_rows[g].push_back(i);
    }
    for (auto &[g, rows] : group_rows) units.push_back(rows);

    std::sort(units.begin(), units.end());
    std::vector<std::vector<std::size_t>> by_class(m.labels.size());
    for (std::size_t u = 0; u < units.size(); ++u) by_class[m.label_index(m.rows[units[u].front()].label)].push_back(u);

    const auto target = largest_remainder(units.size(), ratios);

    // Per-class floors; each leftover unit then raises one cell from floor to
    // ceiling. Greedy by descending fractional part, completed with
    // augmenting paths so every class and every split total is met exactly.
    const std::size_t c_count = by_class.size();
    std::vector<std::array<std::size_t, 3>> quota(c_count);
    std::vector<std::array<double, 3>> frac(c_count);
    std::vector<std::array<bool, 3>> raised(c_count, {false, false, false});
    std::array<std::size_t, 3> room = target;
    std::vector<std::size_t> need(c_count);
    for (std::size_t c = 0; c < c_count; ++c) {
        const std::size_t n = by_class[c].size();
        std::size_t used = 0;
        for (int k = 0; k < 3; ++k) {
            const double exact = double(n) * ratios[k];
            quota[c][k] = std::size_t(std::floor(exact + 1e-9));
            frac[c][k] = exact - double(quota[c][k]);
            used += quota[c][k];
            room[k] -= quota[c][k];
        }
        need[c] = n - used;
    }
    auto can_raise = [&](std::size_t c, int k) { return !raised[c][k] && frac[c][k] > 1e-9; };
    struct Cell {
        double f;
        std::size_t c;
        int k;
    };
    std::vector<Cell> cells;
    for (std::size_t c = 0; c < c_count; ++c)
        for (int k = 0; k < 3; ++k) cells.push_back({frac[c][k], c, k});
    std::stable_sort(cells.begin(), cells.end(), [](const Cell &a, const Cell &b) { return a.f > b.f; });
    for (const auto &x : cells) {
        if (need[x.c] == 0 || room[x.k] == 0 || !can_raise(x.c, x.k)) continue;
        raised[x.c][x.k] = true;
        --room[x.k];
        --need[x.c];
    }
    std::vector<bool> visited;
    std::function<bool(std::size_t)> augment = [&](std::size_t c) -> bool {
        visited[c] = true;
        for (int k = 0; k < 3; ++k) {
            if (!can_raise(c, k)) continue;
            if (room[k] > 0) {
                raised[c][k] = true;
                --room[k];
                return true;
            }
            for (std::size_t c2 = 0; c2 < c_count; ++c2) {
                if (visited[c2] || !raised[c2][k]) continue;
                raised[c2][k] = false;
                if (augment(c2)) {
                    raised[c][k] = true;
                    return true;
                }
                raised[c2][k] = true;
            }
        }
        return false;
    };
    for (std::size_t c = 0; c < c_count; ++c) {
        while (need[c] > 0) {
            visited.assign(c_count, false);
            if (!augment(c)) throw Error("split: no consistent rounding of the split ratios");
            --need[c];
        }
    }
    for (std::size_t c = 0; c < c_count; ++c)
        for (int k = 0; k < 3; ++k) quota[c][k] += raised[c][k] ? 1 : 0;

    static constexpr const char *kNames[3] = {"train", "val", "test"};
    for (std::size_t c = 0; c < c_count; ++c)
        for (int k = 0; k < 3; ++k)
            if (quota[c][k] == 0)
                throw ValidationError("split: class '" + m.labels[c] + "' has " + std::to_string(by_class[c].size()) +
                                      " item(s), too few for a non-empty " + kNames[k] + " split");

    Split s;
    std::array<std::vector<std::size_t> *, 3> dest{&s.train, &s.val, &s.test};
    for (std::size_t c = 0; c < c_count; ++c) {
        auto members = by_class[c];
        CounterRng rng(derive_seed(seed, "split/" + m.labels[c]));
        for (std::size_t i = members.size(); i > 1; --i) std::swap(members[i - 1], members[rng.below(i)]);
        std::size_t pos = 0;
        for (int k = 0; k < 3; ++k)
            for (std::size_t j = 0; j < quota[c][k]; ++j, ++pos)
                for (auto row : units[members[pos]]) dest[k]->push_back(row);
    }
    for (auto *d : dest) std::sort(d->begin(), d->end());
    return s;
}

std::string split_csv(const DatasetManifest &m, const Split &s) {
    std::vector<const char *> which(m.rows.size(), "");
    for (auto i : s.train) which[i] = "train";
    for (auto i : s.val) which[i] = "val";
    for (auto i : s.test) which[i] = "test";
    std::string out = "file,label,split\n";
    for (std::size_t i = 0; i < m.rows.size(); ++i) out += csv_line({m.rows[i].id, m.rows[i].label, which[i]});
    return out;
}

} // namespace qnnrobust::harness
