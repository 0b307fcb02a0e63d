#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace evotune {

// Base class for everything this library throws deliberately. Callers that
// want a single catch-all can catch evotune::Error; std::exception still works.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Parameter file rejected. Always carries the 1-based line number.
class MalformedLineError : public Error {
public:
    MalformedLineError(int line, const std::string& reason)
        : Error("line " + std::to_string(line) + ": " + reason),
          line_(line),
          reason_(reason) {}
    int line() const { return line_; }
    const std::string& reason() const { return reason_; }

private:
    int line_;
    std::string reason_;
};

class UnknownCatalogError : public Error {
public:
    explicit UnknownCatalogError(const std::string& name)
        : Error("unknown built-in catalog '" + name + "'"), name_(name) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

class InvalidChromosomeError : public Error {
public:
    using Error::Error;
};

class SpaceMismatchError : public Error {
public:
    using Error::Error;
};

class InvalidConfigError : public Error {
public:
    using Error::Error;
};

class UnevaluatedIndividualError : public Error {
public:
    explicit UnevaluatedIndividualError(std::uint64_t id)
        : Error("individual " + std::to_string(id) + " has no fitness yet"), id_(id) {}
    std::uint64_t id() const { return id_; }

private:
    std::uint64_t id_;
};

// Wraps any evaluator failure with the generation and individual it hit.
class EvaluationError : public Error {
public:
    EvaluationError(int generation, std::uint64_t individual_id, const std::string& cause)
        : Error("evaluation failed at generation " + std::to_string(generation) +
                ", individual " + std::to_string(individual_id) + ": " + cause),
          generation_(generation),
          individual_id_(individual_id) {}
    int generation() const { return generation_; }
    std::uint64_t individual_id() const { return individual_id_; }

private:
    int generation_;
    std::uint64_t individual_id_;
};

class ModelMismatchError : public Error {
public:
    using Error::Error;
};

class CacheMissError : public Error {
public:
    explicit CacheMissError(const std::string& canonical_key)
        : Error("replay cache has no entry for chromosome '" + canonical_key + "'"),
          key_(canonical_key) {}
    const std::string& canonical_key() const { return key_; }

private:
    std::string key_;
};

class ApplyFailedError : public Error {
public:
    ApplyFailedError(const std::string& key, const std::string& stderr_text)
        : Error("failed to apply '" + key + "': " + stderr_text), key_(key) {}
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

class BenchmarkTimeoutError : public Error {
public:
    using Error::Error;
};

class UnparseableOutputError : public Error {
public:
    using Error::Error;
};

class ReadFailedError : public Error {
public:
    explicit ReadFailedError(const std::string& key)
        : Error("could not read current value of '" + key + "'"), key_(key) {}
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

class MissingInterfaceError : public Error {
public:
    explicit MissingInterfaceError(const std::string& name)
        : Error("network interface '" + name + "' does not exist"), name_(name) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

class NoSnapshotError : public Error {
public:
    NoSnapshotError() : Error("live apply requires a snapshot first") {}
};

class AbortedError : public Error {
public:
    AbortedError() : Error("run aborted") {}
};

} // namespace evotune
