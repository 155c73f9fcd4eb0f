#pragma once

#include <stdexcept>
#include <string>

namespace skald {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A cell could not be parsed; carries row/column location in the message.
struct IngestError : Error {
    using Error::Error;
};

struct ValueNotInDomain : Error {
    using Error::Error;
};

struct LevelOutOfRange : Error {
    using Error::Error;
};

struct EmptyDomain : Error {
    using Error::Error;
};

/// A value or code was not found in a codebook built during an earlier pass.
/// Signals that the underlying chunks changed between passes.
struct CodebookMiss : Error {
    using Error::Error;
};

/// A histogram would store more entries than the configured bin budget.
struct BudgetExceeded : Error {
    using Error::Error;
};

struct NoFeasibleNode : Error {
    using Error::Error;
};

struct EmptyDataset : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

} // namespace skald
