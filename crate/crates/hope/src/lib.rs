pub mod numtheory;
