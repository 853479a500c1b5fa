#pragma once

#include "transgress/catalog.hpp"
#include "transgress/scenario.hpp"

namespace transgress {

struct Sample {
    double value = 0.0;
    double defect = 0.0;
};

bool known_check(const std::string& op);
const std::vector<std::string>& check_ops();

/// One evaluation of a check at one resolution.
Sample run_check(const ScenarioContext& ctx, const CheckSpec& spec, int resolution);

}  // namespace transgress
