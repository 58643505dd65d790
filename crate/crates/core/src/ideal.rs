//! Multi-ideals `a_1^{e_1} ... a_r^{e_r}` in the plane.

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::polyring::Poly;
use crate::scalars::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    pub generators: Vec<Poly>,
    pub exponent: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiIdeal {
    field: Field,
    ideals: Vec<Ideal>,
}

impl MultiIdeal {
    pub fn new(field: &Field, ideals: Vec<Ideal>) -> Result<MultiIdeal> {
        if ideals.is_empty() {
            return Err(Error::InvalidInput("a multi-ideal needs at least one ideal".into()));
        }
        for ideal in &ideals {
            if ideal.generators.is_empty() {
                return Err(Error::InvalidInput("an ideal needs at least one generator".into()));
            }
            if ideal.exponent <= BigRational::zero() {
                return Err(Error::InvalidInput("exponents must be positive".into()));
            }
            for g in &ideal.generators {
                if g.is_zero() {
                    return Err(Error::ZeroPolynomial);
                }
                if g.field() != field || g.nvars() != 2 {
                    return Err(Error::FieldMismatch(format!(
                        "generator {g} is not a bivariate polynomial over {field}"
                    )));
                }
            }
        }
        Ok(MultiIdeal {
            field: field.clone(),
            ideals,
        })
    }

    /// `(f)^e`.
    pub fn principal(f: &Poly, exponent: BigRational) -> Result<MultiIdeal> {
        MultiIdeal::new(
            f.field(),
            vec![Ideal {
                generators: vec![f.clone()],
                exponent,
            }],
        )
    }

    /// Parses generators given as text.
    pub fn parse(field: &Field, ideals: &[(Vec<&str>, BigRational)]) -> Result<MultiIdeal> {
        let parsed = ideals
            .iter()
            .map(|(gens, e)| {
                Ok(Ideal {
                    generators: gens.iter().map(|g| Poly::parse(g, field)).collect::<Result<_>>()?,
                    exponent: e.clone(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        MultiIdeal::new(field, parsed)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ideals(&self) -> &[Ideal] {
        &self.ideals
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    pub fn exponents(&self) -> Vec<BigRational> {
        self.ideals.iter().map(|i| i.exponent.clone()).collect()
    }

    pub fn generators(&self) -> Vec<Vec<Poly>> {
        self.ideals.iter().map(|i| i.generators.clone()).collect()
    }

    /// Same ideals with every exponent multiplied by `s`.
    pub fn scaled(&self, s: &BigRational) -> MultiIdeal {
        MultiIdeal {
            field: self.field.clone(),
            ideals: self
                .ideals
                .iter()
                .map(|i| Ideal {
                    generators: i.generators.clone(),
                    exponent: &i.exponent * s,
                })
                .collect(),
        }
    }

    /// Whether some ideal vanishes at the origin.
    pub fn vanishes_at_origin(&self) -> bool {
        self.ideals.iter().any(|i| {
            i.generators
                .iter()
                .all(|g| self.field.is_zero(&g.constant_term()))
        })
    }

    /// Whether every generator is a monomial.
    pub fn is_monomial(&self) -> bool {
        self.ideals
            .iter()
            .all(|i| i.generators.iter().all(|g| g.len() == 1))
    }

    pub fn map_coeffs<F>(&self, target: &Field, f: F) -> MultiIdeal
    where
        F: Fn(&Scalar) -> Scalar,
    {
        MultiIdeal {
            field: target.clone(),
            ideals: self
                .ideals
                .iter()
                .map(|i| Ideal {
                    generators: i.generators.iter().map(|g| g.map_coeffs(target, &f)).collect(),
                    exponent: i.exponent.clone(),
                })
                .collect(),
        }
    }

    /// Replaces the generators, keeping the exponents.
    pub fn with_generators(&self, field: &Field, generators: Vec<Vec<Poly>>) -> Result<MultiIdeal> {
        if generators.len() != self.ideals.len() {
            return Err(Error::LengthMismatch {
                expected: self.ideals.len(),
                got: generators.len(),
            });
        }
        MultiIdeal::new(
            field,
            generators
                .into_iter()
                .zip(&self.ideals)
                .map(|(g, i)| Ideal {
                    generators: g,
                    exponent: i.exponent.clone(),
                })
                .collect(),
        )
    }
}
