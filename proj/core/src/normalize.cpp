#include "gsmds/normalize.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "gsmds/textutil.hpp"

namespace gsmds {

namespace {

bool has_first_marker(const Premise& p) {
    return p.markers.temporal == TemporalAdverbial::first ||
           p.markers.temporal == TemporalAdverbial::initially;
}

bool has_finally_marker(const Premise& p) {
    return p.markers.temporal == TemporalAdverbial::finally_;
}

bool has_before_marker(const Premise& p) {
    return p.markers.temporal == TemporalAdverbial::before;
}

bool has_next_week_marker(const Premise& p) {
    return contains_word(p.text, "next week") || contains_word(p.text, "the following week");
}

// Anchor phrase following "while"/"after": tokens up to the next comma or
// clause end, lowercased. Empty when the marker word is absent.
std::string anchor_phrase(std::string_view text, std::string_view marker) {
    std::string lowered = to_lower(text);
    std::string m(marker);
    std::size_t pos = 0;
    while ((pos = lowered.find(m, pos)) != std::string::npos) {
        bool left_ok = pos == 0 || !std::isalnum(static_cast<unsigned char>(lowered[pos - 1]));
        std::size_t after = pos + m.size();
        bool right_ok = after < lowered.size() && lowered[after] == ' ';
        if (!left_ok || !right_ok) {
            ++pos;
            continue;
        }
        std::size_t end = after + 1;
        while (end < lowered.size() && lowered[end] != ',' && lowered[end] != '.' &&
               lowered[end] != ';' && lowered[end] != '!' && lowered[end] != '?') {
            ++end;
        }
        std::string phrase = trim(lowered.substr(after + 1, end - after - 1));
        return collapse_whitespace(phrase);
    }
    return "";
}

struct OrderPass {
    std::vector<std::size_t> order;  // positions into the input premise vector
    bool changed = false;
};

// One canonicalization pass over the current order. Applied to fixpoint.
OrderPass pass(const std::vector<Premise>& ps, const std::vector<std::size_t>& current) {
    std::vector<std::size_t> firsts, befores, middle, finals, queries;
    for (std::size_t pos : current) {
        const Premise& p = ps[pos];
        if (p.is_query) {
            queries.push_back(pos);
        } else if (has_first_marker(p)) {
            firsts.push_back(pos);
        } else if (has_finally_marker(p)) {
            finals.push_back(pos);
        } else if (has_before_marker(p)) {
            befores.push_back(pos);
        } else {
            middle.push_back(pos);
        }
    }

    // In-slot ordinal sort.
    {
        std::vector<std::size_t> slots, members;
        for (std::size_t i = 0; i < middle.size(); ++i) {
            if (ps[middle[i]].markers.ordinal) {
                slots.push_back(i);
                members.push_back(middle[i]);
            }
        }
        std::stable_sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
            return *ps[a].markers.ordinal < *ps[b].markers.ordinal;
        });
        for (std::size_t k = 0; k < slots.size(); ++k) middle[slots[k]] = members[k];
    }

    // In-slot weekday sort with week unwrapping.
    {
        std::vector<std::size_t> slots, members;
        for (std::size_t i = 0; i < middle.size(); ++i) {
            if (ps[middle[i]].markers.day && !ps[middle[i]].markers.ordinal) {
                slots.push_back(i);
                members.push_back(middle[i]);
            }
        }
        std::vector<int> keys(members.size(), 0);
        int prev_raw = -1, prev_key = 0;
        for (std::size_t k = 0; k < members.size(); ++k) {
            int d = *ps[members[k]].markers.day;
            if (prev_raw < 0) {
                keys[k] = d;
            } else if (has_next_week_marker(ps[members[k]])) {
                int diff = (d - prev_raw + 7) % 7;
                keys[k] = prev_key + (diff == 0 ? 7 : diff);
            } else if (d >= prev_raw) {
                keys[k] = prev_key + (d - prev_raw);
            } else {
                int wrap = d + 7 - prev_raw;  // 1..6
                // Small wraps (Sat->Sun, Sat->Mon) continue the narrative week;
                // larger backward jumps are out-of-order days.
                if (wrap <= 2) {
                    keys[k] = prev_key + wrap;
                } else {
                    keys[k] = prev_key - (prev_raw - d);
                }
            }
            prev_raw = d;
            prev_key = keys[k];
        }
        std::vector<std::size_t> idx(members.size());
        for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = k;
        std::stable_sort(idx.begin(), idx.end(),
                         [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
        for (std::size_t k = 0; k < slots.size(); ++k) middle[slots[k]] = members[idx[k]];
    }

    std::vector<std::size_t> next;
    next.reserve(current.size());
    next.insert(next.end(), firsts.begin(), firsts.end());
    next.insert(next.end(), befores.begin(), befores.end());
    next.insert(next.end(), middle.begin(), middle.end());
    next.insert(next.end(), finals.begin(), finals.end());
    next.insert(next.end(), queries.begin(), queries.end());

    // "while X" premises move directly before their "after X" anchor.
    for (std::size_t wi = 0; wi < next.size(); ++wi) {
        const Premise& w = ps[next[wi]];
        if (w.markers.temporal != TemporalAdverbial::while_) continue;
        std::string phrase = anchor_phrase(w.text, "while");
        if (phrase.empty()) continue;
        for (std::size_t ai = 0; ai < wi; ++ai) {
            if (anchor_phrase(ps[next[ai]].text, "after") == phrase) {
                std::size_t moved = next[wi];
                next.erase(next.begin() + static_cast<std::ptrdiff_t>(wi));
                next.insert(next.begin() + static_cast<std::ptrdiff_t>(ai), moved);
                break;
            }
        }
    }

    OrderPass out;
    out.changed = next != current;
    out.order = std::move(next);
    return out;
}

}  // namespace

ReorderResult reorder(const std::vector<Premise>& premises, const MarkerLexicon&) {
    // Marker conflicts are hard errors.
    int finally_count = 0, first_count = 0;
    std::unordered_set<int> seen_ordinals;
    for (const Premise& p : premises) {
        if (p.is_query) continue;
        if (has_finally_marker(p)) ++finally_count;
        if (has_first_marker(p)) ++first_count;
        if (p.markers.ordinal) {
            if (!seen_ordinals.insert(*p.markers.ordinal).second) {
                throw ConflictingMarkers("ordinal " + std::to_string(*p.markers.ordinal) +
                                         " appears on two premises");
            }
        }
    }
    if (finally_count > 1) throw ConflictingMarkers("two premises claim 'finally'");
    if (first_count > 1) throw ConflictingMarkers("two premises claim 'first'/'initially'");

    std::vector<std::size_t> order(premises.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    const std::size_t max_passes = 2 * premises.size() + 4;
    for (std::size_t iter = 0; iter < max_passes; ++iter) {
        OrderPass p = pass(premises, order);
        order = p.order;
        if (!p.changed) break;
    }

    ReorderResult result;
    result.permutation = order;
    result.premises.reserve(premises.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        Premise p = premises[order[i]];
        p.index = static_cast<int>(i) + 1;
        result.premises.push_back(std::move(p));
    }
    return result;
}

std::vector<int> main_chain(const DiscourseStructure& s) {
    const int n = static_cast<int>(s.premises.size());
    if (n == 0) return {};
    std::vector<std::vector<int>> forward(static_cast<std::size_t>(n) + 1);
    for (const RelationEdge& e : s.edges) {
        if (e.relation == Relation::background) continue;
        if (e.source >= 1 && e.source <= n && e.target >= 1 && e.target <= n) {
            forward[static_cast<std::size_t>(e.source)].push_back(e.target);
        }
    }
    std::vector<bool> reachable(static_cast<std::size_t>(n) + 1, false);
    std::vector<int> stack = {1};
    reachable[1] = true;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : forward[static_cast<std::size_t>(v)]) {
            if (!reachable[static_cast<std::size_t>(w)]) {
                reachable[static_cast<std::size_t>(w)] = true;
                stack.push_back(w);
            }
        }
    }
    std::vector<int> chain;
    for (int i = 1; i <= n; ++i) {
        if (reachable[static_cast<std::size_t>(i)]) chain.push_back(i);
    }
    return chain;
}

}  // namespace gsmds
