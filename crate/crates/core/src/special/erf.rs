//! Error function and complementary error function.
//!
//! Rational approximations from FreeBSD's msun `s_erf.c` (Sun Microsystems,
//! 1993; freely distributable with the notice preserved), as also carried by
//! the Go standard library. Accurate to within about one ulp.

const ERX: f64 = 8.450_629_115_104_675_3e-1;

// |x| < 0.84375
const PP0: f64 = 1.283_791_670_955_125_6e-1;
const PP1: f64 = -3.250_421_072_470_015e-1;
const PP2: f64 = -2.848_174_957_559_851e-2;
const PP3: f64 = -5.770_270_296_489_441_6e-3;
const PP4: f64 = -2.376_301_665_665_016_3e-5;
const QQ1: f64 = 3.979_172_239_591_553_5e-1;
const QQ2: f64 = 6.502_224_998_876_729e-2;
const QQ3: f64 = 5.081_306_281_875_766e-3;
const QQ4: f64 = 1.324_947_380_043_216_4e-4;
const QQ5: f64 = -3.960_228_278_775_368e-6;

// 0.84375 <= |x| < 1.25
const PA0: f64 = -2.362_118_560_752_659_4e-3;
const PA1: f64 = 4.148_561_186_837_483_3e-1;
const PA2: f64 = -3.722_078_760_357_013_3e-1;
const PA3: f64 = 3.183_466_199_011_617_5e-1;
const PA4: f64 = -1.108_946_942_823_966_8e-1;
const PA5: f64 = 3.547_830_432_561_823_6e-2;
const PA6: f64 = -2.166_375_594_868_790_8e-3;
const QA1: f64 = 1.064_208_804_008_442_3e-1;
const QA2: f64 = 5.403_979_177_021_710_5e-1;
const QA3: f64 = 7.182_865_441_419_627e-2;
const QA4: f64 = 1.261_712_198_087_616_4e-1;
const QA5: f64 = 1.363_708_391_202_905e-2;
const QA6: f64 = 1.198_449_984_679_910_7e-2;

// 1.25 <= |x| < 1/0.35
const RA0: f64 = -9.864_944_034_847_148e-3;
const RA1: f64 = -6.938_585_727_071_818e-1;
const RA2: f64 = -1.055_862_622_532_329_1e1;
const RA3: f64 = -6.237_533_245_032_6e1;
const RA4: f64 = -1.623_966_694_625_734_7e2;
const RA5: f64 = -1.846_050_929_067_110_4e2;
const RA6: f64 = -8.128_743_550_630_659e1;
const RA7: f64 = -9.814_329_344_169_146e0;
const SA1: f64 = 1.965_127_166_743_925_7e1;
const SA2: f64 = 1.376_577_541_435_190_4e2;
const SA3: f64 = 4.345_658_774_752_292_3e2;
const SA4: f64 = 6.453_872_717_332_679e2;
const SA5: f64 = 4.290_081_400_275_678_3e2;
const SA6: f64 = 1.086_350_055_417_794_4e2;
const SA7: f64 = 6.570_249_770_319_282e0;
const SA8: f64 = -6.042_441_521_485_81e-2;

// 1/0.35 <= |x| < 28
const RB0: f64 = -9.864_942_924_700_099e-3;
const RB1: f64 = -7.992_832_376_805_23e-1;
const RB2: f64 = -1.775_795_491_775_475_2e1;
const RB3: f64 = -1.606_363_848_558_219_2e2;
const RB4: f64 = -6.375_664_433_683_896e2;
const RB5: f64 = -1.025_095_131_611_077_2e3;
const RB6: f64 = -4.835_191_916_086_514e2;
const SB1: f64 = 3.033_806_074_348_246e1;
const SB2: f64 = 3.257_925_129_965_739_2e2;
const SB3: f64 = 1.536_729_586_084_437e3;
const SB4: f64 = 3.199_858_219_508_595_4e3;
const SB5: f64 = 2.553_050_406_433_164_4e3;
const SB6: f64 = 4.745_285_412_069_554e2;
const SB7: f64 = -2.244_095_244_658_581_8e1;

const TINY: f64 = 1.387_778_780_781_445_7e-17; // 2^-56
const SMALL: f64 = 3.725_290_298_461_914e-9; // 2^-28
const EFX: f64 = 1.283_791_670_955_125_9e-1;

fn erf_core(x: f64) -> f64 {
    // |x| in [1.25, 28): erfc(x) = exp(-x*x - 0.5625 + R/S) / x
    let s = 1.0 / (x * x);
    let (r, q) = if x < 1.0 / 0.35 {
        (
            RA0 + s * (RA1 + s * (RA2 + s * (RA3 + s * (RA4 + s * (RA5 + s * (RA6 + s * RA7)))))),
            1.0 + s
                * (SA1
                    + s * (SA2
                        + s * (SA3 + s * (SA4 + s * (SA5 + s * (SA6 + s * (SA7 + s * SA8))))))),
        )
    } else {
        (
            RB0 + s * (RB1 + s * (RB2 + s * (RB3 + s * (RB4 + s * (RB5 + s * RB6))))),
            1.0 + s * (SB1 + s * (SB2 + s * (SB3 + s * (SB4 + s * (SB5 + s * (SB6 + s * SB7)))))),
        )
    };
    // split x into a pseudo-single-precision head so -x*x is exact
    let z = f64::from_bits(x.to_bits() & 0xffff_ffff_0000_0000);
    f64::exp(-z * z - 0.5625) * f64::exp((z - x) * (z + x) + r / q)
}

/// The error function.
pub fn erf(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x == f64::INFINITY {
        return 1.0;
    }
    if x == f64::NEG_INFINITY {
        return -1.0;
    }
    let sign = x < 0.0;
    let x = x.abs();
    let val = if x < 0.84375 {
        if x < SMALL {
            x + EFX * x
        } else {
            let z = x * x;
            let r = PP0 + z * (PP1 + z * (PP2 + z * (PP3 + z * PP4)));
            let s = 1.0 + z * (QQ1 + z * (QQ2 + z * (QQ3 + z * (QQ4 + z * QQ5))));
            x + x * (r / s)
        }
    } else if x < 1.25 {
        let s = x - 1.0;
        let p = PA0 + s * (PA1 + s * (PA2 + s * (PA3 + s * (PA4 + s * (PA5 + s * PA6)))));
        let q = 1.0 + s * (QA1 + s * (QA2 + s * (QA3 + s * (QA4 + s * (QA5 + s * QA6)))));
        ERX + p / q
    } else if x >= 6.0 {
        1.0
    } else {
        1.0 - erf_core(x) / x
    };
    if sign {
        -val
    } else {
        val
    }
}

/// The complementary error function, `1 - erf(x)`, without cancellation
/// for large positive `x`.
pub fn erfc(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x == f64::INFINITY {
        return 0.0;
    }
    if x == f64::NEG_INFINITY {
        return 2.0;
    }
    let sign = x < 0.0;
    let x = x.abs();
    let val = if x < 0.84375 {
        let temp = if x < TINY {
            x
        } else {
            let z = x * x;
            let r = PP0 + z * (PP1 + z * (PP2 + z * (PP3 + z * PP4)));
            let s = 1.0 + z * (QQ1 + z * (QQ2 + z * (QQ3 + z * (QQ4 + z * QQ5))));
            let y = r / s;
            if x < 0.25 {
                x + x * y
            } else {
                0.5 + (x * y + (x - 0.5))
            }
        };
        if sign {
            return 1.0 + temp;
        }
        return 1.0 - temp;
    } else if x < 1.25 {
        let s = x - 1.0;
        let p = PA0 + s * (PA1 + s * (PA2 + s * (PA3 + s * (PA4 + s * (PA5 + s * PA6)))));
        let q = 1.0 + s * (QA1 + s * (QA2 + s * (QA3 + s * (QA4 + s * (QA5 + s * QA6)))));
        if sign {
            return 1.0 + ERX + p / q;
        }
        return 1.0 - ERX - p / q;
    } else if x < 28.0 {
        if sign && x > 6.0 {
            return 2.0;
        }
        erf_core(x) / x
    } else {
        if sign {
            return 2.0;
        }
        0.0
    };
    if sign {
        2.0 - val
    } else {
        val
    }
}
