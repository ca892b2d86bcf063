#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "towerforge/bigint.hpp"

namespace towerforge {

// Base class for all domain errors raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

class NonPrimeCharacteristic : public Error {
   public:
    using Error::Error;
};

class ReducibleModulus : public Error {
   public:
    using Error::Error;
};

class ParseError : public Error {
   public:
    ParseError(std::size_t offset, const std::string& what)
        : Error("parse error at byte " + std::to_string(offset) + ": " + what), offset_(offset) {}
    std::size_t offset() const { return offset_; }

   private:
    std::size_t offset_;
};

class ZeroModulus : public Error {
   public:
    using Error::Error;
};

class ZeroInput : public Error {
   public:
    using Error::Error;
};

class CharacteristicMismatch : public Error {
   public:
    using Error::Error;
};

class ReducibleInput : public Error {
   public:
    using Error::Error;
};

class BudgetExceeded : public Error {
   public:
    using Error::Error;
};

class ReducibleModulusPrime : public Error {
   public:
    using Error::Error;
};

class TrivialCharacter : public Error {
   public:
    using Error::Error;
};

// Raised when a value expected to be a rational integer has nonzero
// non-constant coordinates; carries the offending (index, value) pairs.
class NotRational : public Error {
   public:
    NotRational(std::string what, std::vector<std::pair<std::size_t, Int>> offending)
        : Error(std::move(what)), offending_(std::move(offending)) {}
    const std::vector<std::pair<std::size_t, Int>>& offending() const { return offending_; }

   private:
    std::vector<std::pair<std::size_t, Int>> offending_;
};

class NotCoprime : public Error {
   public:
    using Error::Error;
};

class IncompatibleConductors : public Error {
   public:
    using Error::Error;
};

class PoleOrderDivisibleByP : public Error {
   public:
    using Error::Error;
};

class IoError : public Error {
   public:
    using Error::Error;
};

}  // namespace towerforge
