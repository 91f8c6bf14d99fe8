#include "ordest/loss.hpp"

#include "ordest/error.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <sstream>

namespace ordest {

namespace {

std::atomic<unsigned long> next_custom_id{1};

std::string format_real(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

}  // namespace

LossSpec LossSpec::squared() {
    return LossSpec{};
}

LossSpec LossSpec::linex(double a) {
    if (a == 0.0 || !std::isfinite(a)) {
        throw Error(ErrorCode::InvalidArgument, "linex parameter a must be finite and nonzero");
    }
    LossSpec spec;
    spec.kind_ = Kind::Linex;
    spec.a_ = a;
    return spec;
}

LossSpec LossSpec::custom(std::string name, Fn value, Fn derivative) {
    if (!value || !derivative) {
        throw Error(ErrorCode::InvalidArgument, "custom loss needs value and derivative");
    }
    for (double t = -5.0; t <= 5.0; t += 0.25) {
        if (t == 0.0) continue;
        const double d = derivative(t);
        if (!(d * t > 0.0)) {
            throw Error(ErrorCode::InvalidArgument,
                        "custom loss '" + name + "' is not strictly bowl shaped at t=" +
                            format_real(t));
        }
    }
    LossSpec spec;
    spec.kind_ = Kind::Custom;
    spec.custom_ = std::make_shared<const CustomFns>(
        CustomFns{std::move(name), std::move(value), std::move(derivative), next_custom_id++});
    return spec;
}

LossSpec LossSpec::parse(std::string_view text) {
    if (text == "squared" || text == "quadratic") return squared();
    if (text.starts_with("linex:")) {
        auto rest = text.substr(6);
        double a = 0.0;
        auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), a);
        if (ec != std::errc{} || ptr != rest.data() + rest.size()) {
            throw Error(ErrorCode::ConfigError, "bad linex parameter in '" + std::string(text) + "'");
        }
        return linex(a);
    }
    throw Error(ErrorCode::ConfigError,
                "unknown loss '" + std::string(text) + "' (expected squared or linex:<a>)");
}

double LossSpec::value(double t) const {
    switch (kind_) {
        case Kind::SquaredError: return t * t;
        case Kind::Linex: return std::expm1(a_ * t) - a_ * t;
        case Kind::Custom: return custom_->value(t);
    }
    return 0.0;
}

double LossSpec::deriv(double t) const {
    switch (kind_) {
        case Kind::SquaredError: return 2.0 * t;
        case Kind::Linex: return a_ * std::expm1(a_ * t);
        case Kind::Custom: return custom_->deriv(t);
    }
    return 0.0;
}

std::string LossSpec::to_string() const {
    switch (kind_) {
        case Kind::SquaredError: return "squared";
        case Kind::Linex: return "linex:" + format_real(a_);
        case Kind::Custom: return "custom:" + custom_->name;
    }
    return {};
}

std::string LossSpec::cache_key() const {
    if (kind_ == Kind::Custom) {
        return "custom#" + std::to_string(custom_->id);
    }
    return to_string();
}

}  // namespace ordest
