#pragma once

#include <algorithm>
#include <string>
#include <vector>

namespace vilenkin {

/// One verified condition: a stable machine-readable name, the outcome, the
/// numeric deviation that was observed (exact checks report literal 0), and a
/// short human detail for failures.
struct CheckItem {
    std::string name;
    bool pass = true;
    double deviation = 0.0;
    std::string detail;
};

struct Report {
    std::vector<CheckItem> items;
    std::vector<std::string> notes;

    void add(std::string name, bool pass, double deviation = 0.0, std::string detail = {}) {
        items.push_back({std::move(name), pass, deviation, std::move(detail)});
    }
    void merge(const Report& other) {
        items.insert(items.end(), other.items.begin(), other.items.end());
        notes.insert(notes.end(), other.notes.begin(), other.notes.end());
    }
    bool all_pass() const {
        return std::all_of(items.begin(), items.end(), [](const CheckItem& c) { return c.pass; });
    }
    double max_deviation() const {
        double m = 0.0;
        for (const auto& c : items) m = std::max(m, c.deviation);
        return m;
    }
    const CheckItem* find(const std::string& name) const {
        for (const auto& c : items)
            if (c.name == name) return &c;
        return nullptr;
    }
};

}  // namespace vilenkin
