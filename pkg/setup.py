from setuptools import setup, find_packages

setup(
    name='eigenladder',
    version='0.1.0',
    description='Eigenoperator spectra, level spacings and thermal sums for nonlinear oscillators',
    long_description=open('README.md').read(),
    long_description_content_type='text/markdown',
    author='eigenladder developers',
    packages=find_packages(include=['eigenladder', 'eigenladder.*']),
    python_requires='>=3.8',
    install_requires=[
        'numpy',
        'scipy',
        'pyyaml',
        'sympy',
    ],
    extras_require={
        'dev': ['pytest', 'sphinx', 'sphinx-rtd-theme', 'black', 'flake8'],
    },
    entry_points={
        'console_scripts': [
            'eigenladder=eigenladder.__main__:main',
        ],
    },
    include_package_data=True,
    license='MIT',
    classifiers=[
        'Programming Language :: Python :: 3',
        'License :: OSI Approved :: MIT License',
        'Operating System :: OS Independent',
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering :: Physics',
        'Topic :: Software Development :: Libraries :: Python Modules',
    ],
)
