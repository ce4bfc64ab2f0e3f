#pragma once

#include <map>
#include <stdexcept>
#include <string>

namespace qdp {

// Input could not be parsed.  line/col are 1-based; 0 means "unknown".
struct ParseError : std::runtime_error {
    int line = 0;
    int col = 0;

    explicit ParseError(const std::string& msg, int line_ = 0, int col_ = 0)
        : std::runtime_error(msg), line(line_), col(col_) {}
};

// A graph that must be connected is not.
struct DisconnectedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A metric-graph comparison was asked to work on a graph with bridges.
struct BridgedInputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A statement that is supposed to hold unconditionally failed on a concrete
// instance.  This is never expected to fire; when it does, the instance data
// is preserved so the failure can be reported and reproduced.
struct FalsifierError : std::runtime_error {
    std::string statement;                        // name of the violated statement
    std::map<std::string, std::string> instance;  // witness data, key -> rendered value

    FalsifierError(std::string statement_, std::map<std::string, std::string> instance_)
        : std::runtime_error("falsifier: " + statement_),
          statement(std::move(statement_)),
          instance(std::move(instance_)) {}
};

}  // namespace qdp
