#include "cylsat/projector.hpp"

#include <algorithm>

#include <json.hpp>

namespace cylsat {

Universe::Universe(int cap) : cap_(cap) {
    if (cap < 0) throw std::invalid_argument("Universe: cap must be >= 0");
    // k in lexicographic order keeps ids_ sorted by the canonical id order.
    for (int a = 0; a <= cap; ++a)
        for (int b = 0; b <= cap; ++b)
            for (int c = 0; c <= cap; ++c) {
                const Index3 k{a, b, c};
                for (Family fam : {Family::Y, Family::Z})
                    for (int j = 1; j <= 2; ++j) {
                        EigenId id{fam, k, j};
                        if (eigen_id_valid(id)) ids_.push_back(id);
                    }
            }
}

int Universe::index_of(const EigenId& id) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || !(*it == id)) return -1;
    return int(it - ids_.begin());
}

std::pair<int, int> Universe::range_at(const Index3& k) const {
    EigenId lo{Family::Y, k, 1};
    auto first = std::lower_bound(ids_.begin(), ids_.end(), lo);
    auto it = first;
    while (it != ids_.end() && it->k == k) ++it;
    return {int(first - ids_.begin()), int(it - ids_.begin())};
}

void EigenCoords::sort_merge() {
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::size_t out = 0;
    for (std::size_t i = 0; i < entries.size();) {
        auto acc = entries[i];
        std::size_t j = i + 1;
        while (j < entries.size() && entries[j].first == acc.first) {
            acc.second += entries[j].second;
            ++j;
        }
        if (!acc.second.zero()) entries[out++] = std::move(acc);
        i = j;
    }
    entries.resize(out);
}

bool EigenCoords::operator==(const EigenCoords& o) const {
    if (entries.size() != o.entries.size()) return false;
    for (std::size_t i = 0; i < entries.size(); ++i)
        if (entries[i].first != o.entries[i].first || !(entries[i].second == o.entries[i].second))
            return false;
    return true;
}

bool Projector::residual_orthogonal(const TrigVectorField& u) const {
    TrigVectorField residual = u - expand(project(u));
    // Only modes present in the residual can pair with a universe element.
    std::vector<Index3> modes;
    for (int c = 0; c < 3; ++c)
        for (const auto& t : residual.comp[c].terms()) modes.push_back(t.k);
    std::sort(modes.begin(), modes.end());
    modes.erase(std::unique(modes.begin(), modes.end()), modes.end());
    for (const auto& k : modes) {
        auto [first, last] = universe().range_at(k);
        for (int pos = first; pos < last; ++pos) {
            if (!inner(residual, field(pos), L_).zero()) return false;
        }
    }
    return true;
}

std::string to_json_string(const EigenCoords& c, const Universe& u) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [pos, v] : c.entries) {
        const EigenId& id = u.id(pos);
        arr.push_back({{"id",
                        {{"family", std::string(1, family_char(id.family))},
                         {"k", {id.k[0], id.k[1], id.k[2]}},
                         {"j", id.j}}},
                       {"coeff", rat_str(v.value)},
                       {"pi_pow", v.pi_pow}});
    }
    return arr.dump(2);
}

}  // namespace cylsat
