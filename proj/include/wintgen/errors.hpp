#pragma once

#include <stdexcept>
#include <string>

namespace wintgen {

// Base class for every failure raised by the library. Callers that only care
// whether a point is usable catch this; the subclasses carry the diagnostics.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    DimensionMismatch(std::size_t a, std::size_t b)
        : Error("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

class DegenerateSpan : public Error {
public:
    using Error::Error;
};

class SignatureMismatch : public Error {
public:
    using Error::Error;
};

class BoundaryViolation : public Error {
public:
    using Error::Error;
};

class ZeroVector : public Error {
public:
    using Error::Error;
};

// The lift is not a point of Q_+ (<xi, conj xi> too small), or the curve is
// not immersed where a derivative was required.
class NotInQuadric : public Error {
public:
    using Error::Error;
};

class PoleNormalization : public Error {
public:
    using Error::Error;
};

// The sphere passes through the pole, i.e. <xi, p> vanishes. Carries the
// offending magnitude so the caller can suggest a different pole.
class PoleOnSphere : public Error {
public:
    explicit PoleOnSphere(double magnitude)
        : Error("sphere passes through the pole (|<xi,p>| = " + std::to_string(magnitude) + ")"),
          magnitude_(magnitude) {}
    double magnitude() const noexcept { return magnitude_; }

private:
    double magnitude_;
};

class RegularityError : public Error {
public:
    RegularityError(int neg, int pos, int null)
        : Error("congruence not regular: span signature (" + std::to_string(neg) + "," +
                std::to_string(pos) + "," + std::to_string(null) + "), expected spacelike rank 4"),
          neg_(neg), pos_(pos), null_(null) {}
    int neg() const noexcept { return neg_; }
    int pos() const noexcept { return pos_; }
    int null() const noexcept { return null_; }

private:
    int neg_, pos_, null_;
};

class ChartError : public Error {
public:
    using Error::Error;
};

class UmbilicError : public Error {
public:
    using Error::Error;
};

class RankDeficient : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace wintgen
