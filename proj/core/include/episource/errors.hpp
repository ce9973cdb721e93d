#pragma once

#include <stdexcept>
#include <string>

namespace episource {

/// Malformed input data (edge lists, snapshot files, configs).
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

/// A requested computation exceeds its configured feasibility limit,
/// e.g. an exact likelihood table on a snapshot too large for the
/// 2^|O|-state sweep.
class infeasible_error : public std::runtime_error {
public:
    explicit infeasible_error(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when no single node can explain a snapshot (all likelihoods zero,
/// e.g. the infected subgraph is disconnected).
class no_source_error : public std::runtime_error {
public:
    explicit no_source_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace episource
