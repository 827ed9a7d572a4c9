#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace phast {

class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Rejected configuration: bad S/L/delta/lambda combination or explicit
/// settings inconsistent with each other.
class invalid_config : public error {
public:
    explicit invalid_config(const std::string& what) : error(what) {}
};

/// The key set contains two identical keys (detected when the terminal
/// layer cannot separate them after a bounded number of retries).
class duplicate_keys : public error {
public:
    explicit duplicate_keys(const std::string& what) : error(what) {}
};

/// More than the maximum number of layers were needed; pathological input
/// or a broken hash function.
class layer_limit_exceeded : public error {
public:
    explicit layer_limit_exceeded(const std::string& what) : error(what) {}
};

class corrupt_stream : public error {
public:
    explicit corrupt_stream(const std::string& what) : error(what) {}
};

class version_mismatch : public error {
public:
    explicit version_mismatch(const std::string& what) : error(what) {}
};

class hash_mismatch : public error {
public:
    explicit hash_mismatch(const std::string& what) : error(what) {}
};

}  // namespace phast
