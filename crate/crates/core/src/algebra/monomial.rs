//! Variables and exponent vectors.

use core::fmt;

/// Number of exponent slots in a [`Monomial`].
pub const MAX_VARS: usize = 14;

/// Slots before the first `Alpha` variable.
const FIXED_SLOTS: usize = 5;

/// Largest genus whose `α` variables fit in a monomial.
pub const MAX_GENUS: usize = MAX_VARS - FIXED_SLOTS;

/// A polynomial variable.
///
/// `U` stands for a square root of `T` (results are moved from `u` to `t`
/// once only even powers remain). `S` is a formal sign: specializations that
/// must commute with power substitution map `q` and the `α_i` to monomials
/// in `u` and `s`, and `s = -1` is set only at the very end.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarId {
    Q,
    Z,
    U,
    T,
    S,
    /// `α_i`, 1-based.
    Alpha(u8),
}

impl VarId {
    pub fn slot(self) -> usize {
        match self {
            VarId::Q => 0,
            VarId::Z => 1,
            VarId::U => 2,
            VarId::T => 3,
            VarId::S => 4,
            VarId::Alpha(i) => {
                assert!(i >= 1 && (i as usize) <= MAX_GENUS, "alpha index {i} out of range");
                FIXED_SLOTS + i as usize - 1
            }
        }
    }

    pub fn from_slot(slot: usize) -> VarId {
        match slot {
            0 => VarId::Q,
            1 => VarId::Z,
            2 => VarId::U,
            3 => VarId::T,
            4 => VarId::S,
            s => VarId::Alpha((s - FIXED_SLOTS + 1) as u8),
        }
    }

    /// `q`, `z`, `u` and `t` only carry non-negative powers in the
    /// polynomials this crate builds; `α_i` and the sign `s` are Laurent.
    pub fn is_laurent(self) -> bool {
        matches!(self, VarId::S | VarId::Alpha(_))
    }

    /// Parses `q`, `z`, `u`, `t`, `s` or `a<i>`.
    pub fn parse(name: &str) -> Option<VarId> {
        match name {
            "q" => Some(VarId::Q),
            "z" => Some(VarId::Z),
            "u" => Some(VarId::U),
            "t" => Some(VarId::T),
            "s" => Some(VarId::S),
            _ => {
                let i: u8 = name.strip_prefix('a')?.parse().ok()?;
                (i >= 1 && i as usize <= MAX_GENUS).then_some(VarId::Alpha(i))
            }
        }
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarId::Q => f.write_str("q"),
            VarId::Z => f.write_str("z"),
            VarId::U => f.write_str("u"),
            VarId::T => f.write_str("t"),
            VarId::S => f.write_str("s"),
            VarId::Alpha(i) => write!(f, "a{i}"),
        }
    }
}

/// An exponent vector. Ordering is lexicographic in slot order
/// `q, z, u, t, s, α_1, …`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial([i16; MAX_VARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; MAX_VARS]);

    pub fn var(v: VarId, exp: i32) -> Monomial {
        let mut m = Monomial::ONE;
        m.set(v, exp);
        m
    }

    pub fn from_pairs(pairs: &[(VarId, i32)]) -> Monomial {
        let mut m = Monomial::ONE;
        for &(v, e) in pairs {
            m.set(v, m.get(v) + e);
        }
        m
    }

    #[inline]
    pub fn get(&self, v: VarId) -> i32 {
        self.0[v.slot()] as i32
    }

    #[inline]
    pub fn exp_at(&self, slot: usize) -> i32 {
        self.0[slot] as i32
    }

    pub fn set(&mut self, v: VarId, exp: i32) {
        self.0[v.slot()] = narrow(exp);
    }

    pub fn is_one(&self) -> bool {
        *self == Monomial::ONE
    }

    /// Product of monomials (exponent-wise sum). Panics on exponent overflow.
    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = [0i16; MAX_VARS];
        let mut ok = true;
        for i in 0..MAX_VARS {
            let s = self.0[i] as i32 + other.0[i] as i32;
            ok &= s == (s as i16) as i32;
            out[i] = s as i16;
        }
        assert!(ok, "monomial exponent overflow");
        Monomial(out)
    }

    /// Quotient of monomials (exponent-wise difference).
    #[inline]
    pub fn div(&self, other: &Monomial) -> Monomial {
        let mut out = [0i16; MAX_VARS];
        let mut ok = true;
        for i in 0..MAX_VARS {
            let s = self.0[i] as i32 - other.0[i] as i32;
            ok &= s == (s as i16) as i32;
            out[i] = s as i16;
        }
        assert!(ok, "monomial exponent overflow");
        Monomial(out)
    }

    pub fn inverse(&self) -> Monomial {
        Monomial::ONE.div(self)
    }

    /// Every exponent multiplied by `k`.
    pub fn pow(&self, k: i32) -> Monomial {
        let mut out = [0i16; MAX_VARS];
        for (o, e) in out.iter_mut().zip(self.0.iter()) {
            *o = narrow(*e as i32 * k);
        }
        Monomial(out)
    }

    /// Largest alpha index with a nonzero exponent (0 if none).
    pub fn max_alpha(&self) -> usize {
        (FIXED_SLOTS..MAX_VARS)
            .rev()
            .find(|&s| self.0[s] != 0)
            .map_or(0, |s| s - FIXED_SLOTS + 1)
    }

    /// Iterator over `(variable, exponent)` for nonzero exponents, in slot order.
    pub fn iter(&self) -> impl Iterator<Item = (VarId, i32)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(s, &e)| (VarId::from_slot(s), e as i32))
    }

    /// Swaps the exponents of two variables.
    pub fn swap(&self, a: VarId, b: VarId) -> Monomial {
        let mut out = *self;
        out.0.swap(a.slot(), b.slot());
        out
    }
}

fn narrow(e: i32) -> i16 {
    i16::try_from(e).expect("monomial exponent overflow")
}

impl fmt::Display for Monomial {
    /// `q^2*z*a1^-1`, or `1` for the empty monomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, e) in self.iter() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
