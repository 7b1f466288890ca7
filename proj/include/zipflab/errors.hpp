#pragma once

#include <stdexcept>
#include <string>

namespace zipflab {

struct NonFiniteState : std::runtime_error {
    explicit NonFiniteState(const std::string& what) : std::runtime_error(what) {}
};

struct NotDecaying : std::runtime_error {
    explicit NotDecaying(const std::string& what) : std::runtime_error(what) {}
};

struct InfiniteMean : std::runtime_error {
    explicit InfiniteMean(const std::string& what) : std::runtime_error(what) {}
};

struct NoStationaryTail : std::runtime_error {
    explicit NoStationaryTail(const std::string& what) : std::runtime_error(what) {}
};

struct NoStationaryRegime : std::runtime_error {
    explicit NoStationaryRegime(const std::string& what) : std::runtime_error(what) {}
};

struct NotIntegrable : std::runtime_error {
    explicit NotIntegrable(const std::string& what) : std::runtime_error(what) {}
};

struct SingularSystem : std::runtime_error {
    explicit SingularSystem(const std::string& what) : std::runtime_error(what) {}
};

struct GridTooCoarse : std::runtime_error {
    explicit GridTooCoarse(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateSample : std::runtime_error {
    explicit DegenerateSample(const std::string& what) : std::runtime_error(what) {}
};

struct IntensityOverflow : std::runtime_error {
    explicit IntensityOverflow(const std::string& what) : std::runtime_error(what) {}
};

struct PopulationExplosion : std::runtime_error {
    explicit PopulationExplosion(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace zipflab
