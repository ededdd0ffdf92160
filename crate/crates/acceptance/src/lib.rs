//! Empty; the package only hosts the `acceptance` test target.
