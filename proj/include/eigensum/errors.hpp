#pragma once

#include <stdexcept>
#include <string>

namespace eigensum {

/// Invalid run configuration (bad field, unknown key, dimension mismatch).
/// Maps to CLI exit code 2.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& what)
        : std::runtime_error("config error [" + field + "]: " + what),
          field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// An iterative scheme exhausted its schedule without stabilizing.
/// Carries the refinement trace for diagnosis. Maps to CLI exit code 3.
class NonConvergenceError : public std::runtime_error {
public:
    NonConvergenceError(const std::string& what, std::string trace)
        : std::runtime_error("non-convergence: " + what), trace_(std::move(trace)) {}
    const std::string& trace() const noexcept { return trace_; }

private:
    std::string trace_;
};

/// A checked invariant failed. Maps to CLI exit code 4.
class CheckFailureError : public std::runtime_error {
public:
    explicit CheckFailureError(const std::string& what)
        : std::runtime_error("check failed: " + what) {}
};

/// Linear system with a vanishing pivot; carries the pivot index.
class SingularSystemError : public std::runtime_error {
public:
    SingularSystemError(int pivot_index, const std::string& what)
        : std::runtime_error(what), pivot_index_(pivot_index) {}
    int pivot_index() const noexcept { return pivot_index_; }

private:
    int pivot_index_;
};

}  // namespace eigensum
