#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "chargelimit/error.hpp"
#include "chargelimit/materials.hpp"
#include "chargelimit/units.hpp"
#include "oracle_values.hpp"
#include "test_support.hpp"

using namespace chargelimit;
using test_support::rel_diff;

TEST_SUITE("units") {

TEST_CASE("derived constants satisfy their defining identities") {
    const auto& k = kConstants;
    const double pi = std::numbers::pi;
    CHECK(rel_diff(k.ry_energy, 0.5 * k.m_e * k.c * k.c * k.alpha * k.alpha) < 1e-9);
    CHECK(rel_diff(k.ry_freq, k.ry_energy / k.h) < 1e-12);
    CHECK(rel_diff(k.a0, k.hbar * k.hbar * 4.0 * pi * k.eps0 / (k.m_e * k.e * k.e)) < 1e-9);
    CHECK(rel_diff(k.alpha, k.e * k.e / (4.0 * pi * k.eps0 * k.hbar * k.c)) < 1e-9);
    // Gaussian Ry = e^2 / (2 a0)
    CHECK(rel_diff(k.ry_energy, k.e * k.e / (4.0 * pi * k.eps0) / (2.0 * k.a0)) < 1e-12);
}

TEST_CASE("derived constants match the oracle and CODATA recommended values") {
    const auto& k = kConstants;
    CHECK(rel_diff(k.alpha, oracle::alpha) < 1e-13);
    CHECK(rel_diff(k.ry_energy, oracle::ry_energy) < 1e-13);
    CHECK(rel_diff(k.ry_freq, oracle::ry_freq) < 1e-13);
    CHECK(rel_diff(k.a0, oracle::a0) < 1e-13);

    CHECK(rel_diff(k.ry_freq, codata2018::rydberg_frequency) < 1e-8);
    CHECK(rel_diff(codata2018::rydberg_energy_ev * k.e / k.h, k.ry_freq) < 1e-8);
    CHECK(rel_diff(k.a0, codata2018::bohr_radius) < 1e-8);
    CHECK(rel_diff(k.alpha, codata2018::fine_structure) < 1e-8);
}

TEST_CASE("effective scales") {
    SUBCASE("vacuum reproduces the vacuum constants exactly") {
        const auto s = effective_scales(vacuum());
        CHECK(s.scale_factor == 1.0);
        CHECK(s.ry_star_energy == kConstants.ry_energy);
        CHECK(s.ry_star_freq == kConstants.ry_freq);
        CHECK(s.a_star == kConstants.a0);
    }
    SUBCASE("GaAs-like host") {
        const auto s = effective_scales(Material{"gaas", 0.067, 12.9});
        CHECK(rel_diff(s.ry_star_freq, oracle::gaas_ry_star_freq) < 1e-12);
        CHECK(rel_diff(s.ry_star_energy / kConstants.e * 1e3, oracle::gaas_ry_star_mev) < 1e-12);
        CHECK(rel_diff(s.a_star, oracle::gaas_a_star) < 1e-12);
        CHECK(rel_diff(s.ry_star_freq, 1.325e12) < 1e-3);
    }
    SUBCASE("scale factor is (1/eps)(m*/m)(1/eps)") {
        const Material m{"x", 0.19, 11.7};
        const auto s = effective_scales(m);
        CHECK(rel_diff(s.scale_factor, (1.0 / m.epsilon_r) * m.m_star_ratio * (1.0 / m.epsilon_r)) <
              1e-15);
        CHECK(rel_diff(s.ry_star_energy, kConstants.ry_energy * s.scale_factor) < 1e-15);
        CHECK(rel_diff(s.a_star, kConstants.a0 * m.epsilon_r / m.m_star_ratio) < 1e-15);
        // Ry* = (e^2/eps_r) / (2 a*) in Gaussian form
        const double e2 = kConstants.e * kConstants.e / (4.0 * std::numbers::pi * kConstants.eps0);
        CHECK(rel_diff(s.ry_star_energy, e2 / m.epsilon_r / (2.0 * s.a_star)) < 1e-12);
    }
    SUBCASE("invalid materials are rejected") {
        CHECK_THROWS_AS(effective_scales(Material{"bad", 0.0, 12.9}), DomainError);
        CHECK_THROWS_AS(effective_scales(Material{"bad", -0.1, 12.9}), DomainError);
        CHECK_THROWS_AS(effective_scales(Material{"bad", 0.067, 0.5}), DomainError);
    }
}

TEST_CASE("effective Rydberg is monotone in mass and permittivity") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        const double m = test_support::log_uniform(rng, 1e-3, 10.0);
        const double eps = test_support::log_uniform(rng, 1.0, 100.0);
        const double base = effective_scales(Material{"a", m, eps}).ry_star_freq;
        CHECK(effective_scales(Material{"b", m * 1.01, eps}).ry_star_freq > base);
        CHECK(effective_scales(Material{"c", m, eps * 1.01}).ry_star_freq < base);
    }
}

TEST_CASE("energy, frequency and temperature conversions") {
    CHECK(energy_to_frequency(0.0) == 0.0);
    CHECK(rel_diff(energy_to_frequency(kConstants.ry_energy), oracle::ry_freq) < 1e-13);
    CHECK(rel_diff(energy_to_frequency(kConstants.e), oracle::electronvolt_freq) < 1e-13);

    std::mt19937_64 rng(11);
    for (int i = 0; i < 500; ++i) {
        const double e = test_support::log_uniform(rng, 1e-30, 1e-10);
        CHECK(rel_diff(frequency_to_energy(energy_to_frequency(e)), e) < 1e-15);
        CHECK(rel_diff(temperature_to_energy(energy_to_temperature(e)), e) < 1e-15);
        const double via_all =
            temperature_to_energy(energy_to_temperature(frequency_to_energy(energy_to_frequency(e))));
        CHECK(rel_diff(via_all, e) < 1e-12);
    }
}

TEST_CASE("thermal voltage threshold") {
    CHECK(thermal_voltage_threshold(0.0) == 0.0);
    CHECK(rel_diff(thermal_voltage_threshold(300.0), oracle::threshold_300k) < 1e-13);
    CHECK(rel_diff(thermal_voltage_threshold(4.2), oracle::threshold_4k2) < 1e-13);
    CHECK_THROWS_AS(thermal_voltage_threshold(-1.0), DomainError);
}

TEST_CASE("Gaussian Coulomb energy maps onto SI") {
    const auto& k = kConstants;
    for (double d : {1e-10, 3.3e-9, 1e-6}) {
        for (double eps : {1.0, 12.9}) {
            const double si = k.e * k.e / (4.0 * std::numbers::pi * k.eps0 * eps * d);
            CHECK(rel_diff(rydberg::to_joules(rydberg::coulomb_energy(d, eps)), si) < 1e-12);
        }
    }
    CHECK(rel_diff(rydberg::coulomb_energy(kConstants.a0, 1.0), 2.0) < 1e-15);
}

}  // TEST_SUITE

TEST_SUITE("materials") {

TEST_CASE("bundled table") {
    const auto t = MaterialTable::bundled();
    CHECK(t.at("vacuum").m_star_ratio == 1.0);
    CHECK(t.at("vacuum").epsilon_r == 1.0);
    CHECK(t.at("gaas").m_star_ratio == 0.067);
    CHECK(t.at("gaas").epsilon_r == 12.9);
    CHECK_THROWS_AS(t.at("unobtainium"), DomainError);
}

TEST_CASE("parsing") {
    const auto t = MaterialTable::parse(R"(
# header comment
inas 0.023 15.15   # trailing comment
	insb	0.014	16.8
inas 0.026 15.15
)");
    REQUIRE(t.entries().size() == 2);
    CHECK(t.at("inas").m_star_ratio == 0.026);
    CHECK(t.at("insb").epsilon_r == 16.8);

    CHECK_THROWS_AS(MaterialTable::parse("x 0.1\n"), ParseError);
    CHECK_THROWS_AS(MaterialTable::parse("x 0.1 abc\n"), ParseError);
    CHECK_THROWS_AS(MaterialTable::parse("x 0.1 12 extra\n"), ParseError);
    CHECK_THROWS_AS(MaterialTable::parse("x -0.1 12\n"), DomainError);
    CHECK_THROWS_AS(MaterialTable::parse("x 0.1 0.9\n"), DomainError);
    CHECK_THROWS_AS(MaterialTable::load("/nonexistent/materials.txt"), ParseError);
}

TEST_CASE("render parses back to the same table") {
    const auto t = MaterialTable::bundled();
    const auto again = MaterialTable::parse(t.render());
    REQUIRE(again.entries().size() == t.entries().size());
    for (const auto& m : t.entries()) {
        CHECK(again.at(m.name).m_star_ratio == m.m_star_ratio);
        CHECK(again.at(m.name).epsilon_r == m.epsilon_r);
    }
}

TEST_CASE("environment table is merged over the bundled one") {
    const auto path = std::filesystem::temp_directory_path() / "chargelimit_units_test_materials.txt";
    {
        std::ofstream f(path);
        f << "gaas 0.07 13.0\nsi_like 0.19 11.7\n";
    }
    ::setenv(kMaterialsEnvVar, path.c_str(), 1);
    const auto t = load_material_tables();
    ::unsetenv(kMaterialsEnvVar);
    std::filesystem::remove(path);
    CHECK(t.at("gaas").m_star_ratio == 0.07);
    CHECK(t.at("si_like").epsilon_r == 11.7);
    CHECK(t.at("vacuum").epsilon_r == 1.0);
}

}  // TEST_SUITE
