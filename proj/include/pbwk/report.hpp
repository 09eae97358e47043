#pragma once

#include <string>
#include <utility>
#include <vector>

namespace pbwk {

struct CheckFailure {
    int degree = 0;
    std::string witness;
    std::string detail;
};

/// Outcome of an identity verified on every basis input up to some degree.
struct CheckReport {
    std::string name;
    std::vector<int> checked;  // inputs checked per degree
    std::vector<CheckFailure> failures;

    explicit CheckReport(std::string n = {}) : name(std::move(n)) {}

    bool passed() const { return failures.empty(); }

    void count(int degree) {
        if (degree < 0) return;
        if (checked.size() <= static_cast<std::size_t>(degree)) checked.resize(static_cast<std::size_t>(degree) + 1, 0);
        ++checked[static_cast<std::size_t>(degree)];
    }

    void fail(int degree, std::string witness, std::string detail) {
        failures.push_back({degree, std::move(witness), std::move(detail)});
    }

    int failures_at(int degree) const {
        int n = 0;
        for (const auto& f : failures) n += f.degree == degree;
        return n;
    }
};

}  // namespace pbwk
