#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>

namespace ordest {

/// A strictly bowl-shaped loss L(t) of the scaled error t = (delta - mu) / sigma,
/// together with its derivative. Built-ins are squared error and linex(a).
class LossSpec {
public:
    enum class Kind { SquaredError, Linex, Custom };
    using Fn = std::function<double(double)>;

    static LossSpec squared();
    static LossSpec linex(double a);
    /// `name` is used for display and as part of the cache key. The bowl
    /// shape is spot-checked on a sign grid; violations throw InvalidArgument.
    static LossSpec custom(std::string name, Fn value, Fn derivative);

    /// Parses "squared" or "linex:<a>".
    static LossSpec parse(std::string_view text);

    Kind kind() const noexcept { return kind_; }
    double linex_a() const noexcept { return a_; }

    double value(double t) const;
    double deriv(double t) const;

    /// Round-trips through parse() for the built-ins.
    std::string to_string() const;
    /// Stable identity used for memoisation; unique per custom instance.
    std::string cache_key() const;

private:
    LossSpec() = default;

    Kind kind_ = Kind::SquaredError;
    double a_ = 0.0;
    struct CustomFns {
        std::string name;
        Fn value;
        Fn deriv;
        unsigned long id;
    };
    std::shared_ptr<const CustomFns> custom_;
};

inline double loss_value(const LossSpec& spec, double t) { return spec.value(t); }
inline double loss_deriv(const LossSpec& spec, double t) { return spec.deriv(t); }

}  // namespace ordest
