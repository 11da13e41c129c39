#pragma once

// Reference values from 40-digit arbitrary-precision evaluation.

namespace fx {

inline constexpr double loggamma_q3_re = -4.067219409137411985568708364578399954766;  // z = 1/4+3i
inline constexpr double loggamma_q3_im = -0.09338431339316938304969317144453667246651;
inline constexpr double loggamma_m25_re = -0.1031492440428192028875999739667905974329;  // z = -2.5+0.1i
inline constexpr double loggamma_m25_im = -9.314444268359838115005918568187188875962;
inline constexpr double loggamma_big_re = -1.702980443956511060322166680202225911179;  // z = 10+20i
inline constexpr double loggamma_big_im = 52.66066042558471948166916873197275361588;

inline constexpr double digamma_q = -4.227453533376265408089530146096683577367;  // z = 1/4
inline constexpr double digamma_2m3_re = 1.207980710710150880786640095580391455146;  // z = 2-3i
inline constexpr double digamma_2m3_im = -1.104129680587576209661978878617257199905;

inline constexpr double zeta_half = -1.460354508809586812889499152515298012467;
inline constexpr double zeta_h10_re = 1.544895220296752766921495888075972644268;  // s = 1/2+10i
inline constexpr double zeta_h10_im = -0.1153364652712733754365914435660597498478;
inline constexpr double zeta_p3_re = -0.4779701683660467562325007824699844765556;  // s = 0.3+50i
inline constexpr double zeta_p3_im = 0.3017989414340838780285752809147331052662;
inline constexpr double zeta_m3_re = 0.02184972648046249871910009452268541842749;  // s = -3+2i
inline constexpr double zeta_m3_im = 0.04717443727308942341265730179113129678646;

inline constexpr double theta_prime_root = 6.289835988836902779665090100821853396658;
inline constexpr double theta_at_root = -3.530972829016607437704244487986459815407;
inline constexpr double theta_10 = -3.067074396289895291702013534809485975988;
inline constexpr double theta_100 = 87.97216523178721962548312911374869086857;

inline constexpr double zero1 = 14.13472514173469379045725198356247027078;
inline constexpr double zero2 = 21.02203963877155499262847959389690277733;
inline constexpr double zero3 = 25.01085758014568876321379099256282181866;

inline constexpr double phi20 = 26.45618688301427377303435525997030316103;

} // namespace fx
