import setuptools

long_message = 'borglev: Dirichlet spectral data, DN maps and Fourier recovery of potentials on the unit box'
version = "0.1"

setuptools.setup(
    name="borglev",
    version=version,
    author="borglev developers",
    author_email="",
    description="Numerical lab for the Borg-Levinson inverse spectral problem",
    long_description=long_message,
    long_description_content_type="text/markdown",
    packages=setuptools.find_packages(exclude=["tests"]),
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: BSD License",
    ],
    python_requires='>=3.7',
    install_requires=[
    'coverage>=5.4',
    'numpy>=1.16.6',
    'scipy>=1.5.0',
    'joblib>=0.14',
    ],
    entry_points={
        'console_scripts': ['bll=borglev.Borglev:main'],
    },
)
