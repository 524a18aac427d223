#pragma once

#include <cmath>
#include <string>

#include "swim/error.hpp"

namespace swim {

enum class ActKind { Relu, Tanh, Sine };

/// Activation function plus the two constants that fix where a data pair
/// lands on it: the first point of a pair maps to the function's "low"
/// anchor and the second to its "high" anchor (relu: 0 and 1; tanh and
/// sine: -1/2 and +1/2 with the midpoint at 0).
struct Activation {
    ActKind kind = ActKind::Tanh;
    double s1 = 0.0;
    double s2 = 0.0;

    static Activation relu() { return {ActKind::Relu, 1.0, 0.0}; }
    static Activation tanh() {
        const double ln3 = std::log(3.0);
        return {ActKind::Tanh, ln3, ln3 / 2.0};
    }
    static Activation sine() {
        const double pi = 3.14159265358979323846;
        return {ActKind::Sine, pi / 3.0, pi / 6.0};
    }

    /// Override the pair-placement constants (sine has no canonical choice).
    static Activation with_constants(ActKind kind, double s1, double s2) {
        return {kind, s1, s2};
    }

    static Activation of(ActKind kind) {
        switch (kind) {
            case ActKind::Relu: return relu();
            case ActKind::Tanh: return tanh();
            case ActKind::Sine: return sine();
        }
        throw Error("activation: unknown kind");
    }

    static Activation parse(const std::string& name) {
        if (name == "relu") return relu();
        if (name == "tanh") return tanh();
        if (name == "sine") return sine();
        throw Error("activation: unknown name '" + name + "' (expected relu|tanh|sine)");
    }

    const char* name() const {
        switch (kind) {
            case ActKind::Relu: return "relu";
            case ActKind::Tanh: return "tanh";
            case ActKind::Sine: return "sine";
        }
        return "?";
    }

    double apply(double x) const {
        switch (kind) {
            case ActKind::Relu: return x > 0.0 ? x : 0.0;
            case ActKind::Tanh: return std::tanh(x);
            case ActKind::Sine: return std::sin(x);
        }
        return 0.0;
    }
};

}  // namespace swim
