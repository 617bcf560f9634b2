use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    CharacteristicThree,
    ReducibleModulus,
    NoEmbedding,
    ZeroPolynomial,
    WrongCharacteristic,
    SingularInput,
    NotOnCurve,
    SingularPoint,
    UnsupportedShape,
    SingularCurve,
    FieldTooLarge,
    DegenerateConfiguration,
    CollinearTriple,
    NotSymplectic,
    ExtensionTooLarge,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            Error::CharacteristicThree => "characteristic three is not supported",
            Error::ReducibleModulus => "modulus polynomial is reducible",
            Error::NoEmbedding => "no embedding between the given fields",
            Error::ZeroPolynomial => "zero polynomial",
            Error::WrongCharacteristic => "operation not defined in this characteristic",
            Error::SingularInput => "input defines a singular curve",
            Error::NotOnCurve => "point does not lie on the curve",
            Error::SingularPoint => "point is a singular point of the curve",
            Error::UnsupportedShape => "cubic is not in a supported shape",
            Error::SingularCurve => "curve is singular",
            Error::FieldTooLarge => "field exceeds the configured size bound",
            Error::DegenerateConfiguration => "divisor supports overlap",
            Error::CollinearTriple => "three of the given points are collinear",
            Error::NotSymplectic => "isomorphism is not symplectic",
            Error::ExtensionTooLarge => "required field extension exceeds the degree bound",
        };
        f.write_str(msg)
    }
}

pub type Result<T> = core::result::Result<T, Error>;
