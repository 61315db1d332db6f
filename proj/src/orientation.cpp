#include "mwb/orientation.hpp"

#include "mwb/f2mat.hpp"

namespace mwb {

namespace {

void check_f(int f) {
    if (f != OrientationValue::kInfinity && (f < 2 || f > 60))
        throw Error("orientation exponent f must be in [2, 60] or infinity");
}

} // namespace

OrientationValue OrientationValue::plus1() {
    return OrientationValue(Form::Plus1, kInfinity, 0, 0);
}

OrientationValue OrientationValue::minus1() {
    return OrientationValue(Form::Minus1, kInfinity, 0, 0);
}

OrientationValue OrientationValue::one_plus(int f) {
    check_f(f);
    return OrientationValue(Form::OnePlus, f, 0, 0);
}

OrientationValue OrientationValue::minus_one_plus(int f) {
    check_f(f);
    return OrientationValue(Form::MinusOnePlus, f, 0, 0);
}

OrientationValue OrientationValue::residue(std::int64_t r, int precision) {
    if ((r & 1) == 0) throw Error("orientation residue must be odd");
    if (precision < 2 || precision > 62)
        throw Error("orientation residue precision must be in [2, 62]");
    return OrientationValue(Form::Residue, kInfinity, r, precision);
}

std::uint64_t OrientationValue::truncate(int bits) const {
    if (bits < 1 || bits > 62) throw Error("truncation width must be in [1, 62]");
    std::uint64_t mod = 1ull << bits;
    std::int64_t v = exact_value();
    std::int64_t r = v % static_cast<std::int64_t>(mod);
    if (r < 0) r += static_cast<std::int64_t>(mod);
    return static_cast<std::uint64_t>(r);
}

std::int64_t OrientationValue::exact_value() const {
    std::int64_t p = (f_ == kInfinity) ? 0 : (std::int64_t(1) << f_);
    switch (form_) {
    case Form::Plus1: return 1;
    case Form::Minus1: return -1;
    case Form::OnePlus: return 1 + p;
    case Form::MinusOnePlus: return -1 + p;
    case Form::Residue: return residue_;
    }
    return 1;
}

int OrientationValue::mod4() const { return truncate(2) == 1 ? 1 : -1; }

bool OrientationValue::is_exactly_one() const {
    return form_ == Form::Plus1 || (form_ == Form::OnePlus && f_ == kInfinity) ||
           (form_ == Form::Residue && residue_ == 1);
}

bool OrientationValue::is_exactly_minus_one() const {
    return form_ == Form::Minus1 || (form_ == Form::MinusOnePlus && f_ == kInfinity) ||
           (form_ == Form::Residue && residue_ == -1);
}

std::string OrientationValue::to_text() const {
    auto f_text = [this] { return f_ == kInfinity ? std::string("inf") : std::to_string(f_); };
    switch (form_) {
    case Form::Plus1: return "1";
    case Form::Minus1: return "-1";
    case Form::OnePlus: return "1+2^" + f_text();
    case Form::MinusOnePlus: return "-1+2^" + f_text();
    case Form::Residue: return "res:" + std::to_string(residue_) + "/" + std::to_string(precision_);
    }
    return "1";
}

} // namespace mwb
