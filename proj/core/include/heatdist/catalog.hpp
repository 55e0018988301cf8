#pragma once

// Registry of closed-form initial data with known solutions. Keys double as
// the CLI's initial-data vocabulary.

#include "heatdist/primitives.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace heatdist {

struct CatalogEntry {
    std::string key;
    std::string summary;
    ParamMap defaults;  // every accepted parameter appears here
    std::function<DistributionalData(const ParamMap&)> build;
    // Closed-form u(x, t); empty when the entry has none.
    std::function<double(const ParamMap&, double x, double t)> oracle;
    // Supremum of the times at which the oracle is valid.
    std::function<double(const ParamMap&)> horizon;
    // ||f|| in the entry's own norm, when known in closed form.
    std::function<std::optional<double>(const ParamMap&)> oracle_norm;
};

namespace catalog {

std::vector<std::string> catalog_list();
// Throws InvalidArgument for unknown keys.
const CatalogEntry& entry(const std::string& key);

// Defaults overlaid with params; rejects parameters the entry does not know.
ParamMap resolve(const std::string& key, const ParamMap& params);
DistributionalData make(const std::string& key, const ParamMap& params = {});

bool has_oracle(const std::string& key);
double oracle_horizon(const std::string& key, const ParamMap& params = {});
// Throws OutOfValidity outside (0, horizon), InvalidArgument without an oracle.
double oracle_eval(const std::string& key, const ParamMap& params, double x, double t);
std::optional<double> oracle_norm(const std::string& key, const ParamMap& params = {});

// sum_{l <= n/2} n! x^{n-2l} t^l / ((n-2l)! l!)
double heat_polynomial(int n, double x, double t);

}  // namespace catalog
}  // namespace heatdist
