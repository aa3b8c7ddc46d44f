#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "depcm/pcm/control.hpp"

namespace depcm::pcm {

enum class Category { baseline, dpcm, apcm, spcm };

std::string_view to_string(Category c) noexcept;

struct HyperparamSpec {
    std::string name;
    double value; // default
    double lo;
    double hi;
    bool integer = false;
};

/// A catalog entry with its taxonomy columns.
struct PcmInfo {
    std::string id;   // short id used in configs, e.g. "shade"
    std::string name; // display name, e.g. "PCM-SHADE"
    Category category;
    std::string f_class;       // how F is controlled: DPCM/APCM/SPCM or a constant
    std::string c_class;       // same for C
    std::string success_obs;   // S, O, S&O or empty
    std::string cont_disc;     // C or D
    std::string single_multi;  // S or M
    std::string info;          // N, T, P or H
    bool inheritance = false;
    bool time_dependent = false; // restarts disabled by default
    bool implemented = true;
    std::vector<HyperparamSpec> hyperparams;
};

/// Every catalog row including the baseline and rows listed for reference only.
const std::vector<PcmInfo>& catalog();

/// Ids of all runnable methods in catalog order.
std::vector<std::string> runnable_ids();

/// Throws ConfigError listing the valid ids.
const PcmInfo& find(std::string_view id);

std::unique_ptr<ParameterControl> create(std::string_view id);

/// Defaults overlaid with overrides; unknown names and out-of-range values throw.
Hyperparams resolve_hyperparams(const PcmInfo& info, const Hyperparams& overrides);

} // namespace depcm::pcm
