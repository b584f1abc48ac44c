#pragma once

#include <stdexcept>
#include <string>

namespace zom
{
    // Root of every error raised by the library. The CLI maps the
    // ScaleFailure branch to its resource exit code and everything else to
    // a usage/input failure.
    class Error : public std::runtime_error
    {
        public:
            using std::runtime_error::runtime_error;
    };

    class BoundsError : public Error { public: using Error::Error; };
    class CatalogError : public Error { public: using Error::Error; };
    class ParseError : public Error { public: using Error::Error; };
    class DegeneratePatternError : public Error { public: using Error::Error; };
    class TypeUndefinedError : public Error { public: using Error::Error; };
    class JoinPreconditionError : public Error { public: using Error::Error; };
    class InvalidStepError : public Error { public: using Error::Error; };

    /// Refusals caused by instance size or a search budget rather than by
    /// malformed input.
    class ScaleFailure : public Error { public: using Error::Error; };

    class ScaleError : public ScaleFailure { public: using ScaleFailure::ScaleFailure; };
    class ResourceCapError : public ScaleFailure { public: using ScaleFailure::ScaleFailure; };
    class OracleScaleError : public ScaleFailure { public: using ScaleFailure::ScaleFailure; };
}
