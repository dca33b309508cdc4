//! Mutual-information tables for the three observation points.
//!
//! Every quantity this crate optimises over is a conditional mutual
//! information of the form `I(S; Y | S^c, Q)`, where `S` is a set of signal
//! components, `S^c` is its complement within the components the observer
//! decodes, and `Q` is the time-sharing variable. A [`MutualInfoTable`]
//! stores these values for every nonempty `S` at all three observation
//! points and is the single interface between channel models and the
//! rate-region machinery: Gaussian closed forms, exact discrete enumeration
//! and the Monte Carlo estimator all produce the same table shape.

use crate::channel::{
    ComponentSet, DiscreteChannel, FactoredInput, GaussianChannel, PowerState, SignalComponent,
    TimeSharingSchedule, User,
};
use crate::pmf::{JointPmf, PmfError};
use crate::seeded::KeyedStream;
use thiserror::Error;

/// Negative estimates closer to zero than this are rounding noise.
pub const MI_CLAMP_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum MiError {
    #[error("mutual information evaluated to {value}, below the clamping tolerance")]
    Negative { value: f64 },
    #[error("components {subset} are not decodable at receiver {receiver:?}")]
    SubsetNotDecodable {
        subset: String,
        receiver: Receiver,
    },
    #[error("Monte Carlo estimation needs at least one sample")]
    NoSamples,
    #[error(transparent)]
    Pmf(#[from] PmfError),
}

/// Gamma function of Gaussian capacity arguments: one half log2(1 + x).
pub fn gamma(x: f64) -> f64 {
    assert!(x >= 0.0, "gamma argument {x} must be nonnegative");
    0.5 * x.ln_1p() / std::f64::consts::LN_2
}

// ---------------------------------------------------------------------------
// Observation points
// ---------------------------------------------------------------------------

/// The three observation points of the channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Receiver {
    Rx1,
    Rx2,
    Eve,
}

impl Receiver {
    pub const ALL: [Receiver; 3] = [Receiver::Rx1, Receiver::Rx2, Receiver::Eve];

    /// The components this observer decodes; everything else it treats as
    /// noise. Receiver 1 decodes both common parts, its own self part and
    /// user 2's other part; receiver 2 mirrors that; the eavesdropper is
    /// credited with decoding everything.
    pub fn decode_set(self) -> ComponentSet {
        use SignalComponent::*;
        match self {
            Receiver::Rx1 => ComponentSet::from_components(&[C1, S1, C2, O2]),
            Receiver::Rx2 => ComponentSet::from_components(&[C2, S2, C1, O1]),
            Receiver::Eve => ComponentSet::FULL,
        }
    }
}

/// Where a receiver sits in the Gaussian geometry: the squared amplitude
/// gains applied to each user's transmission, plus its decode set.
#[derive(Debug, Clone, Copy)]
pub struct Observation {
    pub own_gain: [f64; 2],
    pub decode: ComponentSet,
}

impl Observation {
    /// Standard placement of a receiver on the interference channel.
    pub fn standard(channel: &GaussianChannel, receiver: Receiver) -> Observation {
        let own_gain = match receiver {
            Receiver::Rx1 => [1.0, channel.c21],
            Receiver::Rx2 => [channel.c12, 1.0],
            Receiver::Eve => [channel.c1e, channel.c2e],
        };
        Observation {
            own_gain,
            decode: receiver.decode_set(),
        }
    }

    /// Effective noise floor in one power state: unit thermal noise plus all
    /// signals this observer cannot decode (undecoded components and both
    /// jamming parts).
    pub fn noise_power(&self, state: &PowerState) -> f64 {
        let mut noise = 1.0;
        for c in ComponentSet::FULL.minus(self.decode).iter() {
            noise += state.received_power(c, self.own_gain);
        }
        noise += self.own_gain[0] * state.user1.pj;
        noise += self.own_gain[1] * state.user2.pj;
        noise
    }

    fn state_mi(&self, state: &PowerState, subset: ComponentSet) -> f64 {
        let signal: f64 = subset
            .iter()
            .map(|c| state.received_power(c, self.own_gain))
            .sum();
        gamma(signal / self.noise_power(state))
    }

    /// `I(subset; Y | complement-in-decode-set, Q)` averaged over the
    /// schedule. The conditioned components are subtracted away, so only the
    /// noise floor interferes with the subset.
    pub fn cond_mi(&self, schedule: &TimeSharingSchedule, subset: ComponentSet) -> f64 {
        assert!(
            subset.is_subset_of(self.decode),
            "subset must be decodable at this observation point"
        );
        schedule
            .states
            .iter()
            .map(|(p, st)| p * self.state_mi(st, subset))
            .sum()
    }
}

// ---------------------------------------------------------------------------
// The table
// ---------------------------------------------------------------------------

/// Conditional mutual informations for every nonempty decodable subset at
/// each observation point, indexed by the subset's component mask. Tables
/// are filled by construction, so lookups inside an observer's decode set
/// never miss.
#[derive(Debug, Clone)]
pub struct MutualInfoTable {
    rx1: [f64; 64],
    rx2: [f64; 64],
    eve: [f64; 64],
}

impl MutualInfoTable {
    /// Builds the table by evaluating `f` on every nonempty decodable subset
    /// of each observation point.
    pub fn from_fn(f: impl Fn(Receiver, ComponentSet) -> f64) -> MutualInfoTable {
        let mut table = MutualInfoTable {
            rx1: [0.0; 64],
            rx2: [0.0; 64],
            eve: [0.0; 64],
        };
        for receiver in Receiver::ALL {
            for subset in receiver.decode_set().nonempty_subsets() {
                let value = f(receiver, subset);
                table.slot_mut(receiver)[subset.mask() as usize] = value;
            }
        }
        table
    }

    /// Fallible variant of [`MutualInfoTable::from_fn`].
    pub fn try_from_fn<E>(
        mut f: impl FnMut(Receiver, ComponentSet) -> Result<f64, E>,
    ) -> Result<MutualInfoTable, E> {
        let mut table = MutualInfoTable {
            rx1: [0.0; 64],
            rx2: [0.0; 64],
            eve: [0.0; 64],
        };
        for receiver in Receiver::ALL {
            for subset in receiver.decode_set().nonempty_subsets() {
                let value = f(receiver, subset)?;
                table.slot_mut(receiver)[subset.mask() as usize] = value;
            }
        }
        Ok(table)
    }

    fn slot_mut(&mut self, receiver: Receiver) -> &mut [f64; 64] {
        match receiver {
            Receiver::Rx1 => &mut self.rx1,
            Receiver::Rx2 => &mut self.rx2,
            Receiver::Eve => &mut self.eve,
        }
    }

    fn slot(&self, receiver: Receiver) -> &[f64; 64] {
        match receiver {
            Receiver::Rx1 => &self.rx1,
            Receiver::Rx2 => &self.rx2,
            Receiver::Eve => &self.eve,
        }
    }

    /// `I(subset; Y | decode-set complement, Q)`, or `None` when the subset
    /// is not decodable at that observation point. The empty set has zero
    /// information.
    pub fn get(&self, receiver: Receiver, subset: ComponentSet) -> Option<f64> {
        if !subset.is_subset_of(receiver.decode_set()) {
            return None;
        }
        if subset.is_empty() {
            return Some(0.0);
        }
        Some(self.slot(receiver)[subset.mask() as usize])
    }

    /// Like [`MutualInfoTable::get`] for subsets known to be decodable.
    pub fn entry(&self, receiver: Receiver, subset: ComponentSet) -> f64 {
        self.get(receiver, subset)
            .unwrap_or_else(|| panic!("subset {subset} not decodable at {receiver:?}"))
    }
}

// ---------------------------------------------------------------------------
// Gaussian evaluation
// ---------------------------------------------------------------------------

/// Closed-form conditional mutual information for a Gaussian schedule.
pub fn gaussian_cond_mi(
    channel: &GaussianChannel,
    schedule: &TimeSharingSchedule,
    subset: ComponentSet,
    receiver: Receiver,
) -> f64 {
    Observation::standard(channel, receiver).cond_mi(schedule, subset)
}

/// Builds the full table for a Gaussian schedule in closed form.
pub fn gaussian_mi_table(
    channel: &GaussianChannel,
    schedule: &TimeSharingSchedule,
) -> MutualInfoTable {
    let obs: Vec<Observation> = Receiver::ALL
        .iter()
        .map(|&r| Observation::standard(channel, r))
        .collect();
    MutualInfoTable::from_fn(|receiver, subset| {
        obs[match receiver {
            Receiver::Rx1 => 0,
            Receiver::Rx2 => 1,
            Receiver::Eve => 2,
        }]
        .cond_mi(schedule, subset)
    })
}

/// Table for the multiple-access variant: receiver 2 listens to receiver 1's
/// antenna (same gains as receiver 1) while keeping its own decode set.
pub fn gaussian_mi_table_mac(
    channel: &GaussianChannel,
    schedule: &TimeSharingSchedule,
) -> MutualInfoTable {
    MutualInfoTable::from_fn(|receiver, subset| {
        let obs = match receiver {
            Receiver::Rx2 => Observation {
                own_gain: [1.0, channel.c21],
                decode: Receiver::Rx2.decode_set(),
            },
            other => Observation::standard(channel, other),
        };
        obs.cond_mi(schedule, subset)
    })
}

// ---------------------------------------------------------------------------
// Exact discrete evaluation
// ---------------------------------------------------------------------------

/// Exact `I(targets; rest | given)` on a dense joint pmf, where `rest` is
/// every axis in neither `targets` nor `given`. Values in `(-tol, 0)` clamp
/// to zero; anything more negative is an error.
pub fn discrete_mi(joint: &JointPmf, targets: &[usize], given: &[usize]) -> Result<f64, MiError> {
    let n_axes = joint.dims().len();
    let mut t_sorted = targets.to_vec();
    t_sorted.sort_unstable();
    let mut g_sorted = given.to_vec();
    g_sorted.sort_unstable();

    let tg: Vec<usize> = merge_axes(&t_sorted, &g_sorted);
    let rest: Vec<usize> = (0..n_axes)
        .filter(|a| !t_sorted.contains(a) && !g_sorted.contains(a))
        .collect();
    let rg: Vec<usize> = merge_axes(&rest, &g_sorted);

    let m_tg = joint.marginalize(&tg);
    let m_rg = joint.marginalize(&rg);
    let m_g = joint.marginalize(&g_sorted);

    let dims = joint.dims();
    let mut idx = vec![0usize; n_axes];
    let mut total = 0.0;
    for &p in joint.flat() {
        if p > 0.0 {
            let p_tg = m_tg.prob(&project(&idx, &tg));
            let p_rg = m_rg.prob(&project(&idx, &rg));
            let p_g = m_g.prob(&project(&idx, &g_sorted));
            total += p * ((p * p_g) / (p_tg * p_rg)).log2();
        }
        for axis in (0..n_axes).rev() {
            idx[axis] += 1;
            if idx[axis] < dims[axis] {
                break;
            }
            idx[axis] = 0;
        }
    }
    clamp_mi(total)
}

fn merge_axes(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = a.iter().chain(b.iter()).copied().collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn project(idx: &[usize], axes: &[usize]) -> Vec<usize> {
    if axes.is_empty() {
        vec![0]
    } else {
        axes.iter().map(|&a| idx[a]).collect()
    }
}

fn clamp_mi(value: f64) -> Result<f64, MiError> {
    if value >= 0.0 {
        Ok(value)
    } else if value > -MI_CLAMP_TOL {
        Ok(0.0)
    } else {
        Err(MiError::Negative { value })
    }
}

/// Composes the ten-variable joint `(q, c1, s1, o1, c2, s2, o2, y1, y2, ye)`
/// induced by a factored input on a discrete channel. Channel inputs are
/// summed out through the prefixing kernels.
pub fn compose_joint(
    channel: &DiscreteChannel,
    input: &FactoredInput,
) -> Result<JointPmf, MiError> {
    let (nx1, nx2, ny1, ny2, nye) = channel.sizes();
    let comp_sizes: Vec<usize> = SignalComponent::ALL
        .iter()
        .map(|&c| input.component_size(c))
        .collect();
    let mut dims = vec![input.n_states()];
    dims.extend_from_slice(&comp_sizes);
    dims.extend_from_slice(&[ny1, ny2, nye]);

    let joint = JointPmf::from_fn(dims, |idx| {
        let q = idx[0];
        let comps = &idx[1..7];
        let (y1, y2, ye) = (idx[7], idx[8], idx[9]);
        let mut weight = input.state_prob(q);
        for c in SignalComponent::ALL {
            weight *= input.component_prob(c, q, comps[c.index()]);
        }
        if weight == 0.0 {
            return 0.0;
        }
        let mut lik = 0.0;
        for x1 in 0..nx1 {
            let k1 = input.x1_kernel().prob(comps[0], comps[1], comps[2], x1);
            if k1 == 0.0 {
                continue;
            }
            for x2 in 0..nx2 {
                let k2 = input.x2_kernel().prob(comps[3], comps[4], comps[5], x2);
                if k2 == 0.0 {
                    continue;
                }
                lik += k1 * k2 * channel.prob(x1, x2, y1, y2, ye);
            }
        }
        weight * lik
    })?;
    Ok(joint)
}

/// Exact mutual-information table for a factored input on a discrete
/// channel. Undecoded components are marginalised into the observation's
/// effective noise and `Q` is always conditioned on.
pub fn discrete_mi_table(
    channel: &DiscreteChannel,
    input: &FactoredInput,
) -> Result<MutualInfoTable, MiError> {
    let joint = compose_joint(channel, input)?;

    // Reduced joints per observation point: q, decodable components, own y.
    let mut reduced = Vec::new();
    for receiver in Receiver::ALL {
        let decode = receiver.decode_set();
        let y_axis = match receiver {
            Receiver::Rx1 => 7,
            Receiver::Rx2 => 8,
            Receiver::Eve => 9,
        };
        let mut keep = vec![0usize];
        keep.extend(decode.iter().map(|c| 1 + c.index()));
        keep.push(y_axis);
        let table = joint.marginalize(&keep);
        reduced.push((receiver, keep, table));
    }

    MutualInfoTable::try_from_fn(|receiver, subset| {
        let (_, keep, table) = reduced
            .iter()
            .find(|(r, _, _)| *r == receiver)
            .expect("every receiver has a reduced joint");
        let pos = |axis: usize| keep.binary_search(&axis).expect("kept axis");
        let targets: Vec<usize> = subset.iter().map(|c| pos(1 + c.index())).collect();
        let mut given = vec![0usize];
        given.extend(
            receiver
                .decode_set()
                .minus(subset)
                .iter()
                .map(|c| pos(1 + c.index())),
        );
        discrete_mi(table, &targets, &given)
    })
}

// ---------------------------------------------------------------------------
// Monte Carlo estimation
// ---------------------------------------------------------------------------

/// Monte Carlo estimate of a Gaussian conditional mutual information,
/// using the ratio of residual powers after conditioning. Numerator and
/// denominator share the same sample draws, so a subset carrying zero power
/// estimates exactly zero.
pub fn mc_mi_oracle(
    channel: &GaussianChannel,
    schedule: &TimeSharingSchedule,
    subset: ComponentSet,
    receiver: Receiver,
    samples: usize,
    seed: u64,
) -> Result<f64, MiError> {
    if samples == 0 {
        return Err(MiError::NoSamples);
    }
    let obs = Observation::standard(channel, receiver);
    if !subset.is_subset_of(obs.decode) {
        return Err(MiError::SubsetNotDecodable {
            subset: subset.to_string(),
            receiver,
        });
    }

    let mut estimate = 0.0;
    for (q, (p, state)) in schedule.states.iter().enumerate() {
        // Received standard deviations for the nine signal terms, in a fixed
        // draw order: six components, two jammers, thermal noise.
        let comp_sd: Vec<f64> = SignalComponent::ALL
            .iter()
            .map(|&c| state.received_power(c, obs.own_gain).sqrt())
            .collect();
        let jam_sd = [
            (obs.own_gain[0] * state.user1.pj).sqrt(),
            (obs.own_gain[1] * state.user2.pj).sqrt(),
        ];

        let mut num = 0.0;
        let mut den = 0.0;
        for i in 0..samples {
            let mut stream = KeyedStream::from_parts(&[seed, q as u64, i as u64]);
            let mut draws = [0.0f64; 10];
            for pair in 0..5 {
                let (a, b) = stream.standard_normal_pair();
                draws[2 * pair] = a;
                draws[2 * pair + 1] = b;
            }
            let mut shared = draws[6] * jam_sd[0] + draws[7] * jam_sd[1] + draws[8];
            let mut subset_part = 0.0;
            for c in SignalComponent::ALL {
                let term = draws[c.index()] * comp_sd[c.index()];
                if subset.contains(c) {
                    subset_part += term;
                } else if !obs.decode.contains(c) {
                    shared += term;
                }
            }
            let y = shared + subset_part;
            num += y * y;
            den += shared * shared;
        }
        estimate += p * 0.5 * (num / den).log2();
    }
    clamp_mi(estimate)
}
