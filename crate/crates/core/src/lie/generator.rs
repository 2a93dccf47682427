use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Mutex, OnceLock};

struct GenInfo {
    id: u32,
    name: String,
    degree: i32,
}

/// A named free generator with an integer Lie grading.
///
/// Generators are interned process-wide: two calls to [`Generator::new`] with
/// the same name and degree return the same handle, so copies are cheap and
/// equality is pointer equality. Ordering is by name, then degree.
#[derive(Clone, Copy)]
pub struct Generator(&'static GenInfo);

fn interner() -> &'static Mutex<HashMap<(String, i32), &'static GenInfo>> {
    static TABLE: OnceLock<Mutex<HashMap<(String, i32), &'static GenInfo>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl Generator {
    pub fn new(name: &str, degree: i32) -> Generator {
        let mut table = interner().lock().expect("generator table poisoned");
        let next = table.len() as u32;
        let info = table
            .entry((name.to_string(), degree))
            .or_insert_with(|| Box::leak(Box::new(GenInfo { id: next, name: name.to_string(), degree })));
        Generator(info)
    }

    pub fn name(&self) -> &'static str {
        &self.0.name
    }

    pub fn degree(&self) -> i32 {
        self.0.degree
    }
}

impl PartialEq for Generator {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.0, other.0)
    }
}

impl Eq for Generator {}

impl Hash for Generator {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.id.hash(state);
    }
}

impl Ord for Generator {
    fn cmp(&self, other: &Self) -> Ordering {
        if std::ptr::eq(self.0, other.0) {
            return Ordering::Equal;
        }
        self.0.name.cmp(&other.0.name).then(self.0.degree.cmp(&other.0.degree))
    }
}

impl PartialOrd for Generator {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.name(), self.degree())
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
