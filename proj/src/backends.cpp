#include "wop/solvers.hpp"

namespace wop {

std::unique_ptr<SolverBackend> make_backend(const std::string& name, int workers) {
    if (name == "exact") return std::make_unique<ExactBackend>();
    if (name == "anneal") return std::make_unique<AnnealBackend>(workers);
    if (name == "remote") return std::make_unique<RemoteBackend>();
    throw Error("invalid-backend", "unknown backend '" + name + "', expected exact, anneal or remote");
}

}  // namespace wop
