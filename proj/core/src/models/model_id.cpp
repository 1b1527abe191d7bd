#include "autocast/models/model_id.hpp"

#include <stdexcept>
#include <string>

namespace autocast {

std::string_view to_string(ModelId id) noexcept {
    switch (id) {
    case ModelId::Naive: return "Naive";
    case ModelId::SES: return "SES";
    case ModelId::HWES: return "HWES";
    case ModelId::ARIMA: return "ARIMA";
    case ModelId::SARIMA: return "SARIMA";
    case ModelId::GAM: return "GAM";
    case ModelId::BoostedTree: return "BoostedTree";
    case ModelId::CNN: return "CNN";
    case ModelId::EnsembleMedian: return "EnsembleMedian";
    }
    return "Unknown";
}

ModelId parse_model_id(std::string_view name) {
    for (ModelId id : kAllModels) {
        if (to_string(id) == name) return id;
    }
    throw std::invalid_argument("unknown model '" + std::string(name) + "'");
}

int priority_rank(ModelId id) noexcept {
    switch (id) {
    case ModelId::HWES: return 0;
    case ModelId::SES: return 1;
    case ModelId::GAM: return 2;
    case ModelId::SARIMA: return 3;
    case ModelId::ARIMA: return 4;
    case ModelId::BoostedTree: return 5;
    case ModelId::CNN: return 6;
    case ModelId::EnsembleMedian: return 7;
    case ModelId::Naive: return 8;
    }
    return 9;
}

} // namespace autocast
