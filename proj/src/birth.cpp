#include "zipflab/birth.hpp"

#include <cmath>
#include <stdexcept>

#include "zipflab/errors.hpp"

namespace zipflab {

BirthSchedule sample_births(const BirthLaw& law, double horizon, RngStream& stream,
                            double intensity_cap) {
    if (law.kind == BirthLaw::Kind::Coupled)
        throw std::invalid_argument("sample_births: Coupled law is simulator-side");

    const double d = (law.kind == BirthLaw::Kind::Exponential) ? law.d : 0.0;
    const double nu_max = (d > 0.0) ? law.nu0 * std::exp(d * horizon) : law.nu0;
    const double expected = (d != 0.0)
                                ? law.nu0 * (std::exp(d * horizon) - 1.0) / d
                                : law.nu0 * horizon;
    if (!(expected <= intensity_cap))
        throw IntensityOverflow("expected birth count exceeds the intensity cap");

    BirthSchedule schedule;
    if (nu_max <= 0.0) return schedule;
    schedule.instants.reserve(static_cast<std::size_t>(expected * 1.1) + 8);

    // Homogeneous process at nu_max, thinned down to nu(t)
    double t = 0.0;
    double last = -1.0;
    while (true) {
        t += stream.exponential(nu_max);
        if (t > horizon) break;
        const double nu_t = (d != 0.0) ? law.nu0 * std::exp(d * t) : law.nu0;
        if (stream.uniform() * nu_max > nu_t) continue;
        double instant = t;
        if (instant <= last)  // breaks exact ties by one ulp
            instant = std::nextafter(last, horizon + 1.0);
        schedule.instants.push_back(instant);
        last = instant;
    }
    schedule.entry_sizes.reserve(schedule.instants.size());
    for (std::size_t i = 0; i < schedule.instants.size(); ++i)
        schedule.entry_sizes.push_back(sample_entry_size(law.entry, stream));
    return schedule;
}

double coupled_intensity(const Population& population, double kappa) {
    return kappa * population.total_value;
}

double sample_entry_size(const EntrySizeLaw& law, RngStream& stream, double s_min) {
    if (law.kind == EntrySizeLaw::Kind::PointMass) return law.s0;
    for (int attempt = 0; attempt < 1000; ++attempt) {
        const double s = law.s0 * std::exp(law.log_sd * stream.normal());
        if (s > s_min) return s;
    }
    throw std::runtime_error("entry-size law puts almost no mass above the exit level");
}

}  // namespace zipflab
