#include "depcm/pcm/registry.hpp"

#include <cmath>
#include <functional>

#include "depcm/pcm/methods.hpp"

namespace depcm::pcm {

namespace {

using Factory = std::function<std::unique_ptr<ParameterControl>(const PcmInfo&)>;

template <typename T>
Factory factory() {
    return [](const PcmInfo& info) { return std::make_unique<T>(info); };
}

struct Entry {
    PcmInfo info;
    Factory make;
};

HyperparamSpec real(std::string name, double value, double lo, double hi) { return {std::move(name), value, lo, hi}; }
HyperparamSpec integer(std::string name, double value, double lo, double hi) {
    return {std::move(name), value, lo, hi, true};
}

std::vector<Entry> build_entries() {
    const auto dpcm = Category::dpcm;
    const auto apcm = Category::apcm;
    const std::vector<HyperparamSpec> jde_init{real("F_lower", 0.1, 0.0, 1.0), real("F_init", 0.5, 0.0, 1.0),
                                               real("C_init", 0.9, 0.0, 1.0)};
    auto with_init = [&](std::vector<HyperparamSpec> own) {
        own.insert(own.end(), jde_init.begin(), jde_init.end());
        return own;
    };

    std::vector<Entry> e;
    // clang-format off
    e.push_back({{"f05c09", "F05C09", Category::baseline, "0.5", "0.9", "", "", "", "", false, false, true,
                  {real("F", 0.5, 0.0, 2.0), real("C", 0.9, 0.0, 1.0)}}, factory<FixedControl>()});
    e.push_back({{"dersf", "PCM-DERSF", dpcm, "DPCM", "0.9", "", "C", "M", "N", false, false, true,
                  {real("F_min", 0.5, 0.0, 1.0), real("F_max", 1.0, 0.0, 1.0), real("C", 0.9, 0.0, 1.0)}},
                 factory<DersfControl>()});
    e.push_back({{"detvsf", "PCM-DETVSF", dpcm, "DPCM", "0.9", "", "C", "S", "T", false, true, true,
                  {real("F_min", 0.4, 0.0, 2.0), real("F_max", 1.2, 0.0, 2.0), real("C", 0.9, 0.0, 1.0)}},
                 factory<DetvsfControl>()});
    e.push_back({{"code", "PCM-CoDE", dpcm, "DPCM", "DPCM", "", "D", "M", "N", false, false, true, {}},
                 factory<CodeControl>()});
    e.push_back({{"zmde", "PCM-ZMDE", dpcm, "DPCM", "DPCM", "", "C", "M", "N", false, false, true,
                  {real("F_mean", 0.75, 0.0, 1.0), real("F_var", 0.1, 0.0, 10.0), real("C_min", 0.8, 0.0, 1.0),
                   real("C_max", 1.0, 0.0, 1.0)}},
                 factory<ZmdeControl>()});
    e.push_back({{"sinde", "PCM-SinDE", dpcm, "DPCM", "DPCM", "", "C", "S", "T", false, true, true,
                  {real("omega", 0.25, 0.0, 10.0)}},
                 factory<SindeControl>()});
    e.push_back({{"swde", "PCM-SWDE", dpcm, "DPCM", "DPCM", "", "D", "M", "N", false, false, true, {}},
                 factory<SwdeControl>()});
    e.push_back({{"depd", "PCM-DEPD", apcm, "APCM", "0.5", "O", "C", "S", "P", false, false, true,
                  {real("F_min", 0.4, 0.0, 1.0), real("C", 0.5, 0.0, 1.0)}},
                 factory<DepdControl>()});
    e.push_back({{"jde", "PCM-jDE", apcm, "APCM", "APCM", "S", "C", "M", "N", true, false, true,
                  with_init({real("tau_F", 0.1, 1e-12, 1.0), real("tau_C", 0.1, 1e-12, 1.0)})},
                 factory<JdeControl>()});
    e.push_back({{"cde", "PCM-cDE", apcm, "APCM", "APCM", "S", "D", "M", "H", false, false, true,
                  {real("n0", 2.0, 1e-12, 1e6), real("delta", 1.0 / 45.0, 0.0, 1.0 / 9.0)}},
                 factory<CdeControl>()});
    e.push_back({{"sansde", "PCM-SaNSDE", apcm, "APCM", "APCM", "S", "C", "M", "H", false, false, true,
                  {integer("t_learn", 50, 1, 1e6)}},
                 factory<SansdeControl>()});
    e.push_back({{"fdsade", "PCM-FDSADE", apcm, "APCM", "APCM", "S&O", "C", "M", "P", true, false, true,
                  with_init({real("K", 0.3, 0.0, 1.0)})},
                 factory<FdsadeControl>()});
    e.push_back({{"isade", "PCM-ISADE", apcm, "APCM", "APCM", "S&O", "C", "M", "P", true, false, true,
                  with_init({real("tau_F", 0.1, 1e-12, 1.0), real("tau_C", 0.1, 1e-12, 1.0)})},
                 factory<IsadeControl>()});
    e.push_back({{"sade", "PCM-SaDE", apcm, "DPCM", "APCM", "S", "C", "M", "H", false, false, true,
                  {integer("t_learn", 50, 1, 1e6), real("F_mean", 0.5, -10.0, 10.0), real("F_var", 0.3, 0.0, 10.0),
                   real("C_var", 0.1, 0.0, 10.0)}},
                 factory<SadeControl>()});
    e.push_back({{"jade", "PCM-JADE", apcm, "APCM", "APCM", "S", "C", "M", "H", false, false, true,
                  {real("c", 0.1, 0.0, 1.0)}},
                 factory<JadeControl>()});
    e.push_back({{"epsde", "PCM-EPSDE", apcm, "APCM", "APCM", "S", "D", "M", "N", true, false, true, {}},
                 factory<EpsdeControl>()});
    e.push_back({{"rde", "PCM-RDE", apcm, "APCM", "APCM", "O", "C", "M", "P", false, false, true,
                  {real("F_min", 0.6, 0.0, 1.0), real("F_max", 0.95, 0.0, 1.0), real("C_min", 0.85, 0.0, 1.0),
                   real("C_max", 0.95, 0.0, 1.0)}},
                 factory<RdeControl>()});
    e.push_back({{"imde", "PCM-IMDE", apcm, "APCM", "APCM", "S", "C", "M", "H", false, false, true,
                  {real("c_F_max", 0.2, 0.0, 1.0), real("c_C_max", 0.1, 0.0, 1.0)}},
                 factory<ImdeControl>()});
    e.push_back({{"shade", "PCM-SHADE", apcm, "APCM", "APCM", "S", "C", "M", "H", false, false, true,
                  {integer("H", 5, 1, 1000)}},
                 factory<ShadeControl>()});
    e.push_back({{"yade", "PCM-YADE", apcm, "APCM", "APCM", "O", "C", "M", "P", false, false, false, {}}, nullptr});
    e.push_back({{"dedps", "PCM-DEDPS", apcm, "APCM", "APCM", "S", "D", "M", "H", false, false, true,
                  {integer("t_cs_step", 50, 1, 1e6), integer("prunings", 4, 0, 6)}},
                 factory<DedpsControl>()});
    e.push_back({{"cobide", "PCM-CoBiDE", apcm, "APCM", "APCM", "S", "C", "M", "N", true, false, true, {}},
                 factory<CobideControl>()});
    e.push_back({{"ide", "PCM-IDE", apcm, "APCM", "APCM", "O", "C", "M", "P", false, false, true, {}},
                 factory<IdeControl>()});
    e.push_back({{"slade", "PCM-SLADE", apcm, "APCM", "APCM", "S", "C", "M", "H", false, false, true,
                  {real("c", 0.1, 0.0, 1.0)}},
                 factory<SladeControl>()});
    e.push_back({{"sde", "PCM-SDE", Category::spcm, "SPCM", "0.5", "S", "C", "M", "P", true, false, true, {}},
                 factory<SdeControl>()});
    // clang-format on
    return e;
}

const std::vector<Entry>& entries() {
    static const std::vector<Entry> all = build_entries();
    return all;
}

std::string valid_ids() {
    std::string out;
    for (const auto& id : runnable_ids()) {
        if (!out.empty()) out += ", ";
        out += id;
    }
    return out;
}

} // namespace

std::string_view to_string(Category c) noexcept {
    switch (c) {
    case Category::baseline: return "baseline";
    case Category::dpcm: return "DPCM";
    case Category::apcm: return "APCM";
    case Category::spcm: return "SPCM";
    }
    return "?";
}

const std::vector<PcmInfo>& catalog() {
    static const std::vector<PcmInfo> infos = [] {
        std::vector<PcmInfo> out;
        for (const auto& e : entries()) out.push_back(e.info);
        return out;
    }();
    return infos;
}

std::vector<std::string> runnable_ids() {
    std::vector<std::string> ids;
    for (const auto& e : entries())
        if (e.info.implemented) ids.push_back(e.info.id);
    return ids;
}

const PcmInfo& find(std::string_view id) {
    for (const auto& info : catalog())
        if (info.id == id) {
            if (!info.implemented)
                throw ConfigError("method '" + std::string(id) + "' is listed for reference only and cannot be run");
            return info;
        }
    throw ConfigError("unknown method '" + std::string(id) + "' (valid: " + valid_ids() + ")");
}

std::unique_ptr<ParameterControl> create(std::string_view id) {
    find(id);
    for (std::size_t k = 0; k < entries().size(); ++k)
        if (entries()[k].info.id == id) return entries()[k].make(catalog()[k]);
    return nullptr;
}

Hyperparams resolve_hyperparams(const PcmInfo& info, const Hyperparams& overrides) {
    Hyperparams out;
    for (const auto& spec : info.hyperparams) out[spec.name] = spec.value;
    for (const auto& [name, value] : overrides) {
        const HyperparamSpec* spec = nullptr;
        for (const auto& s : info.hyperparams)
            if (s.name == name) spec = &s;
        if (spec == nullptr) {
            std::string valid;
            for (const auto& s : info.hyperparams) valid += (valid.empty() ? "" : ", ") + s.name;
            throw ConfigError(info.id + ": unknown hyperparameter '" + name + "' (valid: " +
                              (valid.empty() ? std::string("none") : valid) + ")");
        }
        if (!(value >= spec->lo && value <= spec->hi))
            throw ConfigError(info.id + ": hyperparameter " + name + "=" + std::to_string(value) + " outside [" +
                              std::to_string(spec->lo) + ", " + std::to_string(spec->hi) + "]");
        if (spec->integer && value != std::floor(value))
            throw ConfigError(info.id + ": hyperparameter " + name + " must be an integer");
        out[name] = value;
    }
    return out;
}

} // namespace depcm::pcm
