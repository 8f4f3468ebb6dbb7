#pragma once

#include <string>
#include <vector>

namespace oncat {

struct AxiomCheck {
    std::string name;
    bool pass = true;
    std::string counterexample;  // empty when pass
};

struct AxiomReport {
    long n = 0;
    std::string field;
    std::vector<AxiomCheck> checks;

    bool all_pass() const {
        for (auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    AxiomCheck& add(const std::string& name) {
        checks.push_back(AxiomCheck{name, true, {}});
        return checks.back();
    }
};

}  // namespace oncat
