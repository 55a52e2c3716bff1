#pragma once

#include <divlen/ints.hpp>

#include <map>
#include <string>
#include <vector>

namespace divlen {

enum class Rel { Eq, Le, Ge };

struct LinRow {
    std::vector<Rat> coeffs;
    Rel rel = Rel::Eq;
    Rat rhs;
    std::string name;
};

// Exact-rational constraint system over named variables.
struct LinearSystem {
    std::vector<std::string> vars;
    std::vector<LinRow> rows;

    int var_index(const std::string& name) const {
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == name) return (int)i;
        return -1;
    }

    int add_var(const std::string& name) {
        int idx = var_index(name);
        if (idx >= 0) return idx;
        vars.push_back(name);
        return (int)vars.size() - 1;
    }

    LinRow& add_row(Rel rel, const Rat& rhs, const std::string& name = "") {
        rows.push_back(LinRow{std::vector<Rat>(vars.size(), Rat(0)), rel, rhs, name});
        return rows.back();
    }

    // Exact row-space comparison of the equality parts (same variable order
    // required).  Used to check that two presentations of the same equations
    // carry identical information.
    bool equality_rows_equivalent(const LinearSystem& other) const;
};

}  // namespace divlen
