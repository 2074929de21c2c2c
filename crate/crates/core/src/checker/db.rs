use crate::pbcore::{Constraint, RuleViolation};
use crate::proofast::ConstraintId;

/// Live constraints indexed by ID.
///
/// IDs are dense and never reused. Storage is a vector indexed by `id - 1`
/// with `None` marking deleted slots. While at least one snapshot is open,
/// every mutation is recorded in an undo log so [`ConstraintDb::restore`]
/// can roll it back without copying the database.
#[derive(Debug, Default)]
pub struct ConstraintDb {
    slots: Vec<Option<Constraint>>,
    live: usize,
    max_live: usize,
    contradiction: Option<ConstraintId>,
    undo: Vec<Undo>,
    open_snapshots: usize,
}

#[derive(Debug)]
enum Undo {
    Insert(ConstraintId),
    Delete(ConstraintId, Constraint),
    Contradiction(Option<ConstraintId>),
}

/// Marks a point that [`ConstraintDb::restore`] returns to.
#[derive(Debug)]
#[must_use]
pub struct Snapshot {
    undo_len: usize,
}

impl ConstraintDb {
    pub fn new() -> ConstraintDb {
        ConstraintDb::default()
    }

    /// The ID the next inserted constraint will receive.
    pub fn next_id(&self) -> ConstraintId {
        self.slots.len() as ConstraintId + 1
    }

    pub fn live_count(&self) -> usize {
        self.live
    }

    pub fn max_live(&self) -> usize {
        self.max_live
    }

    /// ID of a contradictory constraint derived in the current scope, if any.
    pub fn contradiction(&self) -> Option<ConstraintId> {
        self.contradiction
    }

    pub fn get(&self, id: ConstraintId) -> Option<&Constraint> {
        let idx = usize::try_from(id).ok()?.checked_sub(1)?;
        self.slots.get(idx)?.as_ref()
    }

    pub fn lookup(&self, id: ConstraintId) -> Result<&Constraint, RuleViolation> {
        self.get(id)
            .ok_or_else(|| RuleViolation::new(format!("unknown constraint id {id}")))
    }

    /// Stores a normalized constraint under a fresh ID.
    pub fn insert(&mut self, c: Constraint) -> ConstraintId {
        debug_assert!(c.is_normalized(), "db stores normalized constraints");
        let id = self.next_id();
        if self.contradiction.is_none() && c.is_contradiction() {
            self.log(Undo::Contradiction(None));
            self.contradiction = Some(id);
        }
        self.slots.push(Some(c));
        self.live += 1;
        self.max_live = self.max_live.max(self.live);
        self.log(Undo::Insert(id));
        id
    }

    pub fn delete(&mut self, id: ConstraintId) -> Result<(), RuleViolation> {
        let slot = usize::try_from(id)
            .ok()
            .and_then(|i| i.checked_sub(1))
            .and_then(|i| self.slots.get_mut(i))
            .filter(|s| s.is_some())
            .ok_or_else(|| RuleViolation::new(format!("cannot delete unknown constraint id {id}")))?;
        let c = slot.take().expect("checked above");
        self.live -= 1;
        if self.open_snapshots > 0 {
            self.undo.push(Undo::Delete(id, c));
        }
        Ok(())
    }

    /// Live constraints in ID order.
    pub fn iter(&self) -> impl Iterator<Item = (ConstraintId, &Constraint)> {
        self.slots
            .iter()
            .enumerate()
            .filter_map(|(i, s)| s.as_ref().map(|c| (i as ConstraintId + 1, c)))
    }

    pub fn live_ids(&self) -> Vec<ConstraintId> {
        self.iter().map(|(id, _)| id).collect()
    }

    pub fn snapshot(&mut self) -> Snapshot {
        self.open_snapshots += 1;
        Snapshot {
            undo_len: self.undo.len(),
        }
    }

    /// Rolls back every change made since `snap` was taken. IDs handed out in
    /// the meantime stay consumed.
    pub fn restore(&mut self, snap: Snapshot) {
        while self.undo.len() > snap.undo_len {
            match self.undo.pop().expect("undo log longer than mark") {
                Undo::Insert(id) => {
                    if self.slots[id as usize - 1].take().is_some() {
                        self.live -= 1;
                    }
                }
                Undo::Delete(id, c) => {
                    self.slots[id as usize - 1] = Some(c);
                    self.live += 1;
                }
                Undo::Contradiction(prev) => self.contradiction = prev,
            }
        }
        self.open_snapshots -= 1;
    }

    fn log(&mut self, entry: Undo) {
        if self.open_snapshots > 0 {
            self.undo.push(entry);
        }
    }
}
