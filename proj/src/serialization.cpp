#include "dicke/serialization.hpp"

#include <json.hpp>

namespace dicke {

namespace {

nlohmann::json state_json(const GaussianState& state) {
    nlohmann::json j;
    j["modes"] = state.modes();
    j["mean"] = std::vector<double>(state.mean().data(), state.mean().data() + state.mean().size());
    auto cov = nlohmann::json::array();
    for (Eigen::Index i = 0; i < state.cov().rows(); ++i) {
        auto row = nlohmann::json::array();
        for (Eigen::Index k = 0; k < state.cov().cols(); ++k) row.push_back(state.cov()(i, k));
        cov.push_back(std::move(row));
    }
    j["cov"] = std::move(cov);
    return j;
}

}  // namespace

std::string state_to_json(const GaussianState& state) { return state_json(state).dump(); }

GaussianState state_from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
        const int modes = j.at("modes").get<int>();
        const auto mean = j.at("mean").get<std::vector<double>>();
        const auto cov = j.at("cov").get<std::vector<std::vector<double>>>();
        require(modes >= 1 && mean.size() == static_cast<std::size_t>(2 * modes) && cov.size() == mean.size(),
                ErrorCode::DimensionMismatch, "state_from_json: inconsistent dimensions");
        const auto n = static_cast<Eigen::Index>(mean.size());
        Matrix sigma(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            require(cov[i].size() == mean.size(), ErrorCode::DimensionMismatch, "state_from_json: ragged cov");
            for (Eigen::Index k = 0; k < n; ++k) sigma(i, k) = cov[i][k];
        }
        return {Eigen::Map<const Vector>(mean.data(), n), sigma};
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::InvalidArgument, std::string("state_from_json: ") + e.what());
    }
}

std::string derived_to_json(const DickeDerived& d) {
    nlohmann::json j;
    j["omega"] = d.params.omega;
    j["omega0"] = d.params.omega0;
    j["lam"] = d.params.lam;
    j["n_atoms"] = d.params.n_atoms;
    j["lambda_c"] = d.lambda_c;
    j["k"] = d.k;
    j["alpha"] = d.alpha;
    j["beta"] = d.beta;
    j["theta"] = d.theta;
    j["eps_minus"] = d.eps_minus;
    j["eps_plus"] = d.eps_plus;
    j["omega_tilde"] = d.omega_tilde;
    j["phase"] = std::string(to_string(d.phase));
    return j.dump();
}

}  // namespace dicke
