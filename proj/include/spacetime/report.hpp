#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spacetime/manifold_spec.hpp"

namespace spacetime {

enum class Command { Analyze, Classify, Check, Report };
std::optional<Command> parse_command(const std::string& word);

struct Component {
    Index index;  // 0-based; empty for a scalar
    Expr value;
};

struct TensorListing {
    std::string name;    // "christoffel", "riemann", ..., or a zoo kind
    std::string symbol;  // printed stem: "Γ", "R", "S", ...
    int up = 0;          // leading contravariant indices
    std::vector<Component> components;  // nonzero only, sorted by index
};

struct AuditReport {
    ManifoldSpec spec;
    Command command = Command::Analyze;
    std::vector<TensorListing> tensors;
    std::vector<CheckResult> checks;
};

// `check_name` is used by Command::Check only. Throws InputError when a
// check is unknown or its input block is missing.
AuditReport run(const ManifoldSpec& spec, Command command, const std::string& check_name = {});

// "x1=1,x2=1/2"; every coordinate must be assigned.
Point parse_point(const std::string& assignments, const std::vector<std::string>& coords);

std::string render_text(const AuditReport& r, const std::optional<Point>& numeric = std::nullopt);
std::string render_json(const AuditReport& r, const std::optional<Point>& numeric = std::nullopt);

// 1 when an asserted check fails, else 0.
int exit_status(const AuditReport& r);

}  // namespace spacetime
