#pragma once

#include <string>

#include "asnoc/model.hpp"
#include "asnoc/power.hpp"
#include "asnoc/verify.hpp"

namespace asnoc {

/// Parsed project.json: the instance plus its design knobs.
struct Project {
    CommGraph ccg;
    DesignConfig cfg;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// All writers emit canonical JSON: fixed key order, 2-space indent, one
// trailing newline — byte-stable for identical inputs. Readers tolerate
// unknown fields and check the schema version.

Project read_project(const std::string& text);
std::string write_project(const Project& p);

Topology read_topology(const std::string& text);
std::string write_topology(const Topology& t);

RoutingSet read_routing(const std::string& text);
std::string write_routing(const RoutingSet& r);

SharingPlan read_sharing(const std::string& text);
std::string write_sharing(const SharingPlan& p);

std::string write_power(const PowerReport& r, double fttg_energy = -1.0);

std::string write_verify_report(const VerifyReport& r);

// Small file helpers used by the pipeline and CLI.
std::string read_file(const std::string& path);           // throws ParseError
void write_file(const std::string& path, const std::string& text);

}  // namespace asnoc
