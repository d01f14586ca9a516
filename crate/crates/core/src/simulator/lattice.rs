use rand::Rng;

const NONE: u32 = u32::MAX;

/// A transition of the process.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Event {
    /// An occupied site becomes vacant (rate 1).
    Death { site: usize },
    /// `to` becomes occupied through its occupied neighbour `from` (rate λ
    /// per occupied neighbour).
    Infection { from: usize, to: usize },
}

/// Rate written as `constant + lambda_multiple · λ`, so rates can be
/// compared exactly for any λ.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct RateWeight {
    pub constant: u32,
    pub lambda_multiple: u32,
}

impl RateWeight {
    pub fn at(self, lambda: f64) -> f64 {
        f64::from(self.constant) + f64::from(self.lambda_multiple) * lambda
    }
}

/// Flip rate of site `x` in configuration `occ` on a ring:
/// `c(x, η) = (1 − η(x)) · λ · Σ_{|y−x|=1} η(y) + η(x)`.
pub fn rate_function(occ: &[bool], x: usize) -> RateWeight {
    let n = occ.len();
    if occ[x] {
        RateWeight { constant: 1, lambda_multiple: 0 }
    } else {
        let nbrs = [(x + n - 1) % n, (x + 1) % n];
        RateWeight { constant: 0, lambda_multiple: nbrs.iter().filter(|&&y| occ[y]).count() as u32 }
    }
}

/// Occupancy of a periodic lattice of `L ≥ 3` sites.
///
/// Besides the bit vector it keeps an indexed set of occupied sites and an
/// indexed set of directed occupied→vacant bonds, so the total rate and a
/// uniform pick from either set are O(1) and each flip updates O(1) entries.
/// Bond `2i` points from `i` to its left neighbour, `2i + 1` to its right.
#[derive(Clone, Debug)]
pub struct LatticeState {
    occ: Vec<bool>,
    occupied: Vec<u32>,
    occ_pos: Vec<u32>,
    bonds: Vec<u32>,
    bond_pos: Vec<u32>,
}

impl LatticeState {
    pub fn empty(size: usize) -> Self {
        assert!(size >= 3, "lattice needs at least 3 sites, got {size}");
        assert!(size < (NONE / 2) as usize, "lattice too large");
        Self {
            occ: vec![false; size],
            occupied: Vec::new(),
            occ_pos: vec![NONE; size],
            bonds: Vec::new(),
            bond_pos: vec![NONE; 2 * size],
        }
    }

    pub fn from_sites(size: usize, sites: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(size);
        for i in sites {
            s.set(i, true);
        }
        s
    }

    pub fn all_ones(size: usize) -> Self {
        Self::from_sites(size, 0..size)
    }

    pub fn from_bits(occ: &[bool]) -> Self {
        Self::from_sites(occ.len(), occ.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i))
    }

    pub fn size(&self) -> usize {
        self.occ.len()
    }

    pub fn occupancy(&self) -> &[bool] {
        &self.occ
    }

    pub fn is_occupied(&self, i: usize) -> bool {
        self.occ[i]
    }

    pub fn occupied_count(&self) -> usize {
        self.occupied.len()
    }

    pub fn is_extinct(&self) -> bool {
        self.occupied.is_empty()
    }

    /// Number of directed occupied→vacant neighbour pairs.
    pub fn boundary_bonds(&self) -> usize {
        self.bonds.len()
    }

    #[inline]
    fn neighbour(&self, i: usize, dir: usize) -> usize {
        let n = self.occ.len();
        if dir == 0 {
            (i + n - 1) % n
        } else {
            (i + 1) % n
        }
    }

    pub fn set(&mut self, i: usize, value: bool) {
        if self.occ[i] == value {
            return;
        }
        self.occ[i] = value;
        if value {
            self.occ_pos[i] = self.occupied.len() as u32;
            self.occupied.push(i as u32);
        } else {
            let pos = self.occ_pos[i] as usize;
            let last = self.occupied.pop().expect("occupied site listed");
            if last as usize != i {
                self.occupied[pos] = last;
                self.occ_pos[last as usize] = pos as u32;
            }
            self.occ_pos[i] = NONE;
        }
        let (l, r) = (self.neighbour(i, 0), self.neighbour(i, 1));
        for bond in [2 * i, 2 * i + 1, 2 * l + 1, 2 * r] {
            self.refresh_bond(bond);
        }
    }

    fn refresh_bond(&mut self, bond: usize) {
        let from = bond / 2;
        let to = self.neighbour(from, bond % 2);
        let active = self.occ[from] && !self.occ[to];
        let listed = self.bond_pos[bond] != NONE;
        if active && !listed {
            self.bond_pos[bond] = self.bonds.len() as u32;
            self.bonds.push(bond as u32);
        } else if !active && listed {
            let pos = self.bond_pos[bond] as usize;
            let last = self.bonds.pop().expect("bond listed");
            if last as usize != bond {
                self.bonds[pos] = last;
                self.bond_pos[last as usize] = pos as u32;
            }
            self.bond_pos[bond] = NONE;
        }
    }

    /// `#occupied + λ · #(occupied→vacant bonds)`.
    pub fn total_rate(&self, lambda: f64) -> f64 {
        self.occupied.len() as f64 + lambda * self.bonds.len() as f64
    }

    /// Per-site flip rates as seen by the event sampler's own bookkeeping.
    pub fn site_rates(&self) -> Vec<RateWeight> {
        let mut out = vec![RateWeight::default(); self.size()];
        for &i in &self.occupied {
            out[i as usize].constant += 1;
        }
        for &b in &self.bonds {
            let b = b as usize;
            out[self.neighbour(b / 2, b % 2)].lambda_multiple += 1;
        }
        out
    }

    /// Draws the waiting time and the next event; `None` once extinct.
    pub fn next_event<R: Rng + ?Sized>(&self, lambda: f64, rng: &mut R) -> Option<(f64, Event)> {
        let deaths = self.occupied.len() as f64;
        if deaths == 0.0 {
            return None;
        }
        let total = self.total_rate(lambda);
        let wait = -(1.0 - rng.gen::<f64>()).ln() / total;
        let pick = rng.gen::<f64>() * total;
        let event = if pick < deaths || self.bonds.is_empty() {
            let site = self.occupied[rng.gen_range(0..self.occupied.len())] as usize;
            Event::Death { site }
        } else {
            let b = self.bonds[rng.gen_range(0..self.bonds.len())] as usize;
            Event::Infection { from: b / 2, to: self.neighbour(b / 2, b % 2) }
        };
        Some((wait, event))
    }

    pub fn apply(&mut self, event: Event) {
        match event {
            Event::Death { site } => self.set(site, false),
            Event::Infection { to, .. } => self.set(to, true),
        }
    }

    /// Recomputes the derived sets from the bit vector and compares.
    pub fn is_consistent(&self) -> bool {
        let popcount = self.occ.iter().filter(|&&b| b).count();
        if popcount != self.occupied.len() {
            return false;
        }
        let listed_ok = self
            .occupied
            .iter()
            .enumerate()
            .all(|(k, &i)| self.occ[i as usize] && self.occ_pos[i as usize] == k as u32);
        let bonds_ok = (0..2 * self.size()).all(|b| {
            let active = self.occ[b / 2] && !self.occ[self.neighbour(b / 2, b % 2)];
            let pos = self.bond_pos[b];
            active == (pos != NONE) && (pos == NONE || self.bonds[pos as usize] == b as u32)
        });
        listed_ok && bonds_ok
    }
}
