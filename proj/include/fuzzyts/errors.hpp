#pragma once

#include <stdexcept>
#include <string>

namespace fuzzyts {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// series ingestion
class ParseError : public Error { public: using Error::Error; };
class GapError : public Error { public: using Error::Error; };
class TooShortError : public Error { public: using Error::Error; };
class NonFiniteError : public Error { public: using Error::Error; };
class OutOfRangeError : public Error { public: using Error::Error; };

// fuzzification
class TooFewValuesError : public Error { public: using Error::Error; };
class DegenerateSeriesError : public Error { public: using Error::Error; };
class InvalidSegmentError : public Error { public: using Error::Error; };
class OutOfUniverseError : public Error { public: using Error::Error; };

// swarm optimization
class DimensionMismatchError : public Error { public: using Error::Error; };
class ConfigError : public Error { public: using Error::Error; };

// rule engine
class NoMatchError : public Error { public: using Error::Error; };
class AmbiguousMatchError : public Error { public: using Error::Error; };

// training
class UntrainableRuleError : public Error { public: using Error::Error; };

// evaluation
class EmptyInputError : public Error { public: using Error::Error; };
class ZeroActualError : public Error { public: using Error::Error; };
class AlignmentError : public Error { public: using Error::Error; };

// persistence
class ModelFormatError : public Error { public: using Error::Error; };
class FingerprintMismatchError : public Error { public: using Error::Error; };

} // namespace fuzzyts
