use alloc::sync::Arc;
use core::borrow::Borrow;
use core::fmt;

macro_rules! name_type {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(Arc<str>);

        impl $name {
            /// Panics on an empty identifier.
            pub fn new(id: impl Into<Arc<str>>) -> Self {
                let id = id.into();
                assert!(!id.is_empty(), concat!(stringify!($name), " must be nonempty"));
                $name(id)
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl From<&str> for $name {
            fn from(id: &str) -> Self {
                $name::new(id)
            }
        }

        impl Borrow<str> for $name {
            fn borrow(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                fmt::Debug::fmt(&*self.0, f)
            }
        }
    };
}

name_type!(
    /// Element of N_C.
    ConceptName
);
name_type!(
    /// Element of N_R.
    RoleName
);
name_type!(
    /// Element of N_X, a universally quantified concept variable.
    VarName
);

impl ConceptName {
    /// Prefix of names minted by the ground normalizer. User identifiers
    /// cannot start with `#`.
    pub const DEFINITION_PREFIX: &'static str = "#def:";

    pub fn is_generated(&self) -> bool {
        self.0.starts_with('#')
    }
}

impl fmt::Display for ConceptName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for RoleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for VarName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "?{}", self.0)
    }
}
