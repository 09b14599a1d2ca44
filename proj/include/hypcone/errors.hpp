#pragma once

#include <stdexcept>
#include <string>

namespace hypcone {

// Bad arguments or malformed domain objects (unknown node ids,
// inadmissible words, non-monotone grids, ...).
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// A computation was asked to exceed an explicit budget (node caps,
// incomplete frontiers, iteration limits).
class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

// The requested quantity is not resolvable at the available precision
// or depth; the message names the budget that would be needed.
class precision_error : public std::runtime_error {
public:
    explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

// Configuration file problems; kept separate so the CLI can map them
// to a dedicated exit code.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace hypcone
